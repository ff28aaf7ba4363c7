#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "abeltoric/blowup.hpp"
#include "abeltoric/catalog.hpp"
#include "abeltoric/certificate.hpp"
#include "abeltoric/classify.hpp"
#include "abeltoric/error.hpp"
#include "abeltoric/obstruction.hpp"
#include "abeltoric/picard.hpp"
#include "abeltoric/replay.hpp"

using namespace abeltoric;
namespace fs = std::filesystem;

namespace {

struct Loaded {
  FanFile file;
  Fan fan;
};

Loaded load(const std::string& arg) {
  if (arg.rfind("builtin:", 0) == 0) {
    auto e = builtin_entry(arg.substr(8));
    if (!e) throw Error(ErrorKind::ParseError, "no builtin fan named '" + arg.substr(8) + "'");
    return {e->file, e->fan};
  }
  FanFile f = load_fan_file(arg);
  Fan fan = to_fan(f);
  return {std::move(f), std::move(fan)};
}

std::string pair_label(std::size_t i, std::size_t j) {
  return i == j ? "C" + std::to_string(i + 1) + "^2" : "C" + std::to_string(i + 1) + "C" + std::to_string(j + 1);
}

std::string rhs_text(const std::vector<std::pair<std::size_t, Integer>>& rhs) {
  if (rhs.empty()) return "0";
  std::string s;
  for (const auto& [j, c] : rhs) {
    if (!s.empty()) s += "+";
    if (c != 1) s += c.get_str();
    s += ray_label(j);
  }
  return s;
}

std::string rational_text(const Rational& q) { return q.get_str(); }

void explain(const Verdict& v, std::ostream& out) {
  for (const auto& t : v.state.trace) {
    if (auto* s = std::get_if<step::DisjointDivisors>(&t)) {
      out << "  " << pair_label(s->i, s->j) << " = 0   {" << ray_label(s->i) << "," << ray_label(s->j)
          << "} is a primitive collection\n";
    } else if (auto* s = std::get_if<step::RelationRule>(&t)) {
      out << "  " << format_divisor(s->relation) << " = 0 times D" << s->pivot + 1 << ":";
      for (auto k : s->concluded) out << " " << pair_label(std::min(s->pivot, k), std::max(s->pivot, k));
      out << " = 0\n";
    } else if (auto* s = std::get_if<step::Transitivity>(&t)) {
      out << "  " << pair_label(std::min(s->i, s->k), std::max(s->i, s->k)) << " = 0   from "
          << pair_label(std::min(s->i, s->j), std::max(s->i, s->j)) << " = "
          << pair_label(std::min(s->j, s->k), std::max(s->j, s->k)) << " = 0\n";
    } else if (auto* s = std::get_if<step::ChowVanishing>(&t)) {
      out << "  " << pair_label(s->target.first, s->target.second) << " = 0   on A:";
      for (const auto& [p, c] : s->nonnegative) out << " +" << rational_text(c) << "*" << pair_label(p.first, p.second);
      for (const auto& [p, c] : s->on_zero_set) out << " +(" << rational_text(c) << ")*" << pair_label(p.first, p.second);
      out << " = 0";
      if (s->square_of) out << "   [uses (D" << *s->square_of + 1 << "A)^2]";
      out << "\n";
    }
  }
  if (v.contraction) {
    const auto& c = *v.contraction;
    out << "  contraction: ";
    for (std::size_t k = 0; k < 4; ++k) out << (k ? "+" : "") << ray_label(c.collection[k]);
    out << " = " << (c.multiplicity == 1 ? "" : c.multiplicity.get_str()) << ray_label(c.target) << "\n";
  }
  if (v.contradiction) {
    const auto& c = *v.contradiction;
    out << "  contradiction: " << contradiction_kind_name(c.kind) << " on {";
    for (std::size_t k = 0; k < c.vertices.size(); ++k) out << (k ? "," : "") << c.vertices[k] + 1;
    out << "}";
    if (c.fiber) out << ", fibers " << ray_label((*c.fiber)[0]) << "," << ray_label((*c.fiber)[1]);
    if (c.relies_on_pic_generation) out << " (Pic-generating subset)";
    out << "\n";
  }
  if (v.chow) {
    const auto& ch = *v.chow;
    out << "  A^2 basis:";
    for (const auto& [i, j] : ch.basis.monomials) out << " D" << i + 1 << "D" << j + 1;
    out << "\n  coefficients forced to 0:";
    for (auto b : ch.vanishing_coordinates) out << " a" << b + 1;
    out << "\n  A^2 = 0 on the remaining span: " << (ch.self_intersection_vanishes ? "yes" : "no") << "\n";
  }
}

std::vector<std::size_t> parse_indices(const std::string& text, std::size_t n) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    long v = 0;
    try {
      v = std::stol(item);
    } catch (...) {
      throw Error(ErrorKind::ParseError, "bad index '" + item + "'");
    }
    if (v < 1 || static_cast<std::size_t>(v) > n) throw Error(ErrorKind::ParseError, "index " + item + " out of range 1.." + std::to_string(n));
    out.push_back(static_cast<std::size_t>(v - 1));
  }
  return out;
}

std::vector<long> parse_longs(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stol(item));
    } catch (...) {
      throw Error(ErrorKind::ParseError, "bad integer '" + item + "'");
    }
  }
  return out;
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Internal:
    case ErrorKind::RankDeficiency:
      return 2;
    default:
      return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toric 4-fold kernel and obstruction certifier for abelian surfaces"};
  app.require_subcommand(1);
  int status = 0;

  std::string fan_arg;
  auto* validate_cmd = app.add_subcommand("validate", "check that a fan is smooth, complete and projective");
  validate_cmd->add_option("fan", fan_arg, "fan file or builtin:LABEL")->required();

  auto* coll_cmd = app.add_subcommand("collections", "primitive collections and relations");
  coll_cmd->add_option("fan", fan_arg, "fan file or builtin:LABEL")->required();

  std::string basis_arg;
  auto* rel_cmd = app.add_subcommand("relations", "Pic relations from the dual basis of four rays");
  rel_cmd->add_option("fan", fan_arg, "fan file or builtin:LABEL")->required();
  rel_cmd->add_option("--basis", basis_arg, "four 1-based ray indices, e.g. 1,2,4,6")->required();

  std::vector<long> quad;
  auto* int_cmd = app.add_subcommand("intersect", "degree of D_i D_j D_k D_l (1-based)");
  int_cmd->add_option("fan", fan_arg, "fan file or builtin:LABEL")->required();
  int_cmd->add_option("indices", quad, "four 1-based ray indices")->required()->expected(4);

  std::string mode_arg = "finite", cert_out;
  bool explain_flag = false;
  auto* cert_cmd = app.add_subcommand("certify", "run the obstruction engine");
  cert_cmd->add_option("fan", fan_arg, "fan file or builtin:LABEL")->required();
  cert_cmd->add_option("--mode", mode_arg, "finite or embedding")->check(CLI::IsMember({"finite", "embedding"}));
  cert_cmd->add_option("--cert", cert_out, "write the certificate here");
  cert_cmd->add_flag("--explain", explain_flag, "print the derivation");

  std::string replay_arg;
  auto* replay_cmd = app.add_subcommand("replay", "independently re-check a certificate");
  replay_cmd->add_option("certificate", replay_arg, "certificate JSON")->required();

  std::string fa_arg, family_arg, params_arg, name_arg;
  auto* build_cmd = app.add_subcommand("build", "print a generated fan file");
  build_cmd->add_option("--fa", fa_arg, "F_a-bundle over P2: a,s,t");
  build_cmd->add_option("--family", family_arg, "I, L or M");
  build_cmd->add_option("--params", params_arg, "family parameters, comma separated");
  build_cmd->add_option("--name", name_arg, "name for the generated fan");

  auto* cat_cmd = app.add_subcommand("catalog", "builtin catalog and classification");
  cat_cmd->require_subcommand(1);
  auto* list_cmd = cat_cmd->add_subcommand("list", "list builtin fans");
  std::string export_dir;
  auto* export_cmd = cat_cmd->add_subcommand("export", "write builtin fans as files");
  export_cmd->add_option("--out-dir", export_dir, "target directory")->required();
  std::string extra_dir, csv_out, cert_dir, format = "text";
  unsigned jobs = 1;
  bool no_builtin = false;
  auto* all_cmd = cat_cmd->add_subcommand("certify-all", "certify the catalog in both modes and propagate");
  all_cmd->add_option("--dir", extra_dir, "directory of extra fan files; same labels replace builtins");
  all_cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 256u));
  all_cmd->add_option("--csv", csv_out, "also write the CSV table here");
  all_cmd->add_option("--cert-dir", cert_dir, "write one certificate per fan and mode");
  all_cmd->add_option("--format", format, "stdout format")->check(CLI::IsMember({"text", "csv"}));
  all_cmd->add_flag("--no-builtin", no_builtin, "only certify fans from --dir");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*validate_cmd) {
      const auto l = load(fan_arg);
      const auto r = validate(l.fan);
      std::cout << "rays_primitive: " << (r.rays_primitive ? "true" : "false") << "\n"
                << "smooth: " << (r.smooth ? "true" : "false") << "\n"
                << "complete: " << (r.complete ? "true" : "false") << "\n";
      if (r.ok()) std::cout << "projective: " << (ample_divisor(l.fan) ? "true" : "false") << "\n";
      for (const auto& p : r.problems) std::cout << "problem: " << p << "\n";
      status = r.ok() ? 0 : 1;
    } else if (*coll_cmd) {
      const auto l = load(fan_arg);
      const auto r = validate(l.fan);
      if (!r.ok()) throw Error(ErrorKind::InvalidFan, "fan is not smooth and complete");
      for (const auto& pc : primitive_collections(l.fan)) {
        const auto rel = primitive_relation(l.fan, pc);
        std::string lhs, set;
        for (auto i : pc.indices) {
          lhs += (lhs.empty() ? "" : "+") + ray_label(i);
          set += (set.empty() ? "" : ",") + ray_label(i);
        }
        std::cout << "{" << set << "}: " << lhs << " = " << rhs_text(rel.rhs) << "\n";
      }
    } else if (*rel_cmd) {
      const auto l = load(fan_arg);
      const auto idx = parse_indices(basis_arg, l.fan.size());
      if (idx.size() != 4) throw Error(ErrorKind::ParseError, "--basis needs four indices");
      const auto rels = basis_relations(l.fan, {idx[0], idx[1], idx[2], idx[3]});
      for (std::size_t k = 0; k < 4; ++k) std::cout << "(" << k + 1 << ") " << format_divisor(rels[k]) << " = 0\n";
    } else if (*int_cmd) {
      const auto l = load(fan_arg);
      if (!validate(l.fan).ok()) throw Error(ErrorKind::InvalidFan, "fan is not smooth and complete");
      Multiset4 ms{};
      for (std::size_t k = 0; k < 4; ++k) {
        if (quad[k] < 1 || static_cast<std::size_t>(quad[k]) > l.fan.size()) {
          throw Error(ErrorKind::ParseError, "index out of range 1.." + std::to_string(l.fan.size()));
        }
        ms[k] = static_cast<std::size_t>(quad[k] - 1);
      }
      std::cout << intersection_number(l.fan, ms).get_str() << "\n";
    } else if (*cert_cmd) {
      const auto l = load(fan_arg);
      CertifyOptions opts;
      opts.basis_hint = l.file.chow_basis_hint;
      const Verdict v = certify(l.fan, mode_arg == "finite" ? Mode::FiniteMorphism : Mode::Embedding, opts);
      std::cout << v.summary() << "\n";
      if (explain_flag) explain(v, std::cout);
      if (!cert_out.empty()) write_file_atomically(cert_out, certificate_json(l.fan, v));
    } else if (*replay_cmd) {
      std::ifstream in(replay_arg);
      if (!in) throw Error(ErrorKind::ParseError, "cannot read " + replay_arg);
      std::stringstream ss;
      ss << in.rdbuf();
      const auto rep = replay::check(ss.str());
      if (rep.ok) {
        std::cout << "ok (" << rep.steps_checked << " steps)\n";
      } else {
        for (const auto& e : rep.errors) std::cout << "replay failed: " << e << "\n";
        status = 1;
      }
    } else if (*build_cmd) {
      if (fa_arg.empty() == family_arg.empty()) throw Error(ErrorKind::ParseError, "give exactly one of --fa or --family");
      Fan fan = [&] {
        if (!fa_arg.empty()) {
          const auto p = parse_longs(fa_arg);
          if (p.size() != 3) throw Error(ErrorKind::ParseError, "--fa needs a,s,t");
          return build_fa_bundle(p[0], p[1], p[2]);
        }
        return build_family(parse_family(family_arg), parse_longs(params_arg));
      }();
      if (!name_arg.empty()) fan = fan.renamed(name_arg);
      std::cout << serialize_fan_file(fan_file_of(fan));
    } else if (*list_cmd) {
      for (const auto& e : builtin_catalog()) {
        std::cout << e.type_label << "\t" << e.fan.size() << " rays\t" << e.provenance << "\n";
      }
    } else if (*export_cmd) {
      fs::create_directories(export_dir);
      for (const auto& e : builtin_catalog()) {
        std::string stem;
        for (char c : e.type_label) stem += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
        write_file_atomically(fs::path(export_dir) / (stem + ".json"), serialize_fan_file(e.file));
      }
      std::cout << "wrote " << builtin_catalog().size() << " fans to " << export_dir << "\n";
    } else if (*all_cmd) {
      std::vector<CatalogEntry> entries;
      if (!no_builtin) entries = builtin_catalog();
      if (!extra_dir.empty()) {
        // A file with a builtin's label replaces the builtin.
        for (auto& e : load_catalog_dir(extra_dir)) {
          std::erase_if(entries, [&](const CatalogEntry& b) { return b.type_label == e.type_label; });
          entries.push_back(std::move(e));
        }
      }
      ClassifyOptions opts;
      opts.jobs = jobs;
      if (!cert_dir.empty()) opts.cert_dir = cert_dir;
      const auto rows = classify(entries, opts);
      std::cout << (format == "csv" ? rows_to_csv(rows) : rows_to_text(rows));
      if (!csv_out.empty()) write_file_atomically(csv_out, rows_to_csv(rows));
      for (const auto& r : rows) {
        if (!r.error.empty()) status = 1;
        else if (!r.replay_ok) status = 2;
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << error_kind_name(e.kind()) << ": " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << "\n";
    return 2;
  }
  return status;
}
