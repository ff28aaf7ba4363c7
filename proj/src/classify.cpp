#include "abeltoric/classify.hpp"

#include <algorithm>
#include <cctype>
#include <atomic>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "abeltoric/certificate.hpp"
#include "abeltoric/error.hpp"
#include "abeltoric/replay.hpp"

namespace abeltoric {

std::string ClassificationRow::verdict_text() const {
  return error.empty() ? status_name(status) : "Error";
}

std::string ClassificationRow::source_text() const {
  if (!error.empty()) return "error";
  if (source == Source::Own) return status == Status::Inconclusive ? "none" : "own";
  return source_name(source) + ":" + source_path;
}

void write_file_atomically(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Internal, "cannot write " + tmp.string());
    out << content;
    if (!out) throw Error(ErrorKind::Internal, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

namespace {

std::string file_stem(const std::string& label) {
  std::string s;
  for (char c : label) s += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
  return s;
}

}  // namespace

std::vector<ClassificationRow> classify(const std::vector<CatalogEntry>& entries, const ClassifyOptions& options) {
  std::set<std::string> labels;
  for (const auto& e : entries)
    if (!labels.insert(e.type_label).second) throw Error(ErrorKind::ParseError, "duplicate type label " + e.type_label);
  if (options.cert_dir) std::filesystem::create_directories(*options.cert_dir);

  const std::size_t count = entries.size();
  const Mode modes[2] = {Mode::FiniteMorphism, Mode::Embedding};
  std::vector<ClassificationRow> rows(2 * count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t u = next++; u < rows.size(); u = next++) {
      const auto& e = entries[u / 2];
      auto& row = rows[u];
      row.type = e.type_label;
      row.rays = e.fan.size();
      row.mode = modes[u % 2];
      try {
        CertifyOptions co;
        co.basis_hint = e.file.chow_basis_hint;
        const Verdict v = certify(e.fan, row.mode, co);
        row.status = v.status;
        row.rule = v.rule;
        row.certificate = certificate_json(e.fan, v);
        row.replay_ok = replay::check(row.certificate).ok;
        if (options.cert_dir) {
          write_file_atomically(*options.cert_dir / (file_stem(e.type_label) + "." + mode_name(row.mode) + ".json"),
                                row.certificate);
        }
      } catch (const Error& err) {
        row.error = std::string(error_kind_name(err.kind())) + ": " + err.what();
      }
    }
  };
  const unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  std::vector<Fan> fans;
  for (const auto& e : entries) fans.push_back(e.fan);
  const auto edges = blowup_edges(fans);
  for (std::size_t m = 0; m < 2; ++m) {
    std::vector<SeedVerdict> seeds(count);
    for (std::size_t k = 0; k < count; ++k) {
      const auto& row = rows[2 * k + m];
      if (row.error.empty()) seeds[k] = {row.status, row.rule};
    }
    const auto prop = propagate(count, edges, seeds);
    for (std::size_t k = 0; k < count; ++k) {
      auto& row = rows[2 * k + m];
      if (!row.error.empty() || prop[k].source == Source::Own) continue;
      row.source = prop[k].source;
      row.status = prop[k].status;
      row.rule = prop[k].rule;
      std::string path;
      for (auto p : prop[k].path) path += (path.empty() ? "" : ">") + entries[p].type_label;
      row.source_path = path;
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const ClassificationRow& a, const ClassificationRow& b) {
    if (a.type != b.type) return a.type < b.type;
    return a.mode < b.mode;
  });
  return rows;
}

std::string rows_to_csv(const std::vector<ClassificationRow>& rows) {
  std::ostringstream out;
  out << "type,rays,mode,verdict,rule,source\n";
  for (const auto& r : rows) {
    out << r.type << "," << r.rays << "," << mode_name(r.mode) << "," << r.verdict_text() << ","
        << (r.error.empty() ? rule_name(r.rule) : r.error.substr(0, r.error.find(':'))) << "," << r.source_text()
        << "\n";
  }
  return out.str();
}

std::string rows_to_text(const std::vector<ClassificationRow>& rows) {
  std::size_t w = 4;
  for (const auto& r : rows) w = std::max(w, r.type.size());
  std::ostringstream out;
  auto pad = [](std::string s, std::size_t n) {
    s.resize(std::max(n, s.size()), ' ');
    return s;
  };
  out << pad("type", w) << "  rays  " << pad("mode", 9) << "  " << pad("verdict", 16) << "  "
      << pad("rule", 22) << "  source\n";
  for (const auto& r : rows) {
    out << pad(r.type, w) << "  " << pad(std::to_string(r.rays), 4) << "  " << pad(mode_name(r.mode), 9) << "  "
        << pad(r.verdict_text(), 16) << "  " << pad(r.error.empty() ? rule_name(r.rule) : r.error, 22) << "  "
        << r.source_text() << "\n";
  }
  return out.str();
}

}  // namespace abeltoric
