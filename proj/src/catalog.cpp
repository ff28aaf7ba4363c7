#include "abeltoric/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "abeltoric/error.hpp"

namespace abeltoric {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& msg) { throw Error(ErrorKind::ParseError, msg); }

long get_long(const json& j, const char* what) {
  if (!j.is_number_integer()) parse_fail(std::string(what) + " must be an integer");
  return j.get<long>();
}

std::size_t get_index(const json& j, const char* what) {
  const long v = get_long(j, what);
  if (v < 0) parse_fail(std::string(what) + " must be nonnegative");
  return static_cast<std::size_t>(v);
}

const json& require(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) parse_fail(std::string("missing field '") + key + "'");
  return *it;
}

std::string quote(const std::string& s) { return json(s).dump(); }

std::string int_list(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ",";
    out += items[i];
  }
  return out + "]";
}

std::string render(const Integer& v) { return std::to_string(to_int64(v)); }

}  // namespace

FanFile parse_fan_file(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) parse_fail("fan file must be a JSON object");
  FanFile f;
  const auto& name = require(j, "name");
  if (!name.is_string()) parse_fail("name must be a string");
  f.name = name.get<std::string>();
  if (j.contains("type")) {
    if (!j["type"].is_string()) parse_fail("type must be a string");
    f.type = j["type"].get<std::string>();
  }
  if (j.contains("provenance")) {
    if (!j["provenance"].is_string()) parse_fail("provenance must be a string");
    f.provenance = j["provenance"].get<std::string>();
  }
  const bool has_explicit = j.contains("rays") || j.contains("max_cones");
  const bool has_presentation = j.contains("primitive_presentation");
  if (has_explicit == has_presentation) {
    parse_fail("exactly one of rays+max_cones or primitive_presentation is required");
  }
  if (has_explicit) {
    const auto& rays = require(j, "rays");
    const auto& cones = require(j, "max_cones");
    if (!rays.is_array() || !cones.is_array()) parse_fail("rays and max_cones must be arrays");
    for (const auto& r : rays) {
      if (!r.is_array() || r.size() != 4) parse_fail("each ray needs 4 coordinates");
      f.rays.emplace_back(get_long(r[0], "coordinate"), get_long(r[1], "coordinate"),
                          get_long(r[2], "coordinate"), get_long(r[3], "coordinate"));
    }
    for (const auto& c : cones) {
      if (!c.is_array() || c.size() != 4) parse_fail("each maximal cone needs 4 indices");
      Cone cone;
      for (std::size_t k = 0; k < 4; ++k) cone[k] = get_index(c[k], "cone index");
      f.max_cones.push_back(cone);
    }
  } else {
    const auto& p = j["primitive_presentation"];
    if (!p.is_object()) parse_fail("primitive_presentation must be an object");
    PrimitivePresentation pres;
    pres.n = get_index(require(p, "n"), "n");
    const auto& basis = require(p, "basis");
    if (!basis.is_array() || basis.size() != 4) parse_fail("basis needs 4 indices");
    for (std::size_t k = 0; k < 4; ++k) pres.basis[k] = get_index(basis[k], "basis index");
    const auto& rels = require(p, "relations");
    if (!rels.is_array()) parse_fail("relations must be an array");
    for (const auto& r : rels) {
      if (!r.is_object()) parse_fail("relation must be an object");
      SymbolicRelation sr;
      const auto& lhs = require(r, "lhs");
      const auto& rhs = require(r, "rhs");
      if (!lhs.is_array() || !rhs.is_array()) parse_fail("lhs and rhs must be arrays");
      for (const auto& i : lhs) sr.lhs.push_back(get_index(i, "relation index"));
      for (const auto& t : rhs) {
        if (!t.is_array() || t.size() != 2) parse_fail("rhs terms are [index, coefficient]");
        sr.rhs.emplace_back(get_index(t[0], "relation index"), Integer(get_long(t[1], "coefficient")));
      }
      pres.relations.push_back(std::move(sr));
    }
    f.presentation = std::move(pres);
  }
  if (j.contains("chow_basis_hint")) {
    const auto& h = j["chow_basis_hint"];
    if (!h.is_array()) parse_fail("chow_basis_hint must be an array");
    for (const auto& p : h) {
      if (!p.is_array() || p.size() != 2) parse_fail("chow_basis_hint entries are index pairs");
      std::size_t a = get_index(p[0], "hint index"), b = get_index(p[1], "hint index");
      f.chow_basis_hint.emplace_back(std::min(a, b), std::max(a, b));
    }
  }
  return f;
}

FanFile load_fan_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_fan_file(ss.str());
}

std::string serialize_fan_file(const FanFile& f) {
  std::string out = "{\n  \"name\": " + quote(f.name);
  if (!f.type.empty()) out += ",\n  \"type\": " + quote(f.type);
  if (!f.provenance.empty()) out += ",\n  \"provenance\": " + quote(f.provenance);
  if (f.presentation) {
    const auto& p = *f.presentation;
    std::vector<std::string> basis;
    for (auto b : p.basis) basis.push_back(std::to_string(b));
    out += ",\n  \"primitive_presentation\": {\n    \"n\": " + std::to_string(p.n) +
           ",\n    \"basis\": " + int_list(basis) + ",\n    \"relations\": [";
    for (std::size_t r = 0; r < p.relations.size(); ++r) {
      const auto& rel = p.relations[r];
      std::vector<std::string> lhs, rhs;
      for (auto i : rel.lhs) lhs.push_back(std::to_string(i));
      for (const auto& [j, c] : rel.rhs) rhs.push_back("[" + std::to_string(j) + "," + render(c) + "]");
      out += std::string(r ? "," : "") + "\n      {\"lhs\": " + int_list(lhs) + ", \"rhs\": " + int_list(rhs) + "}";
    }
    out += "\n    ]\n  }";
  } else {
    out += ",\n  \"rays\": [";
    for (std::size_t i = 0; i < f.rays.size(); ++i) {
      std::vector<std::string> c;
      for (std::size_t k = 0; k < 4; ++k) c.push_back(render(f.rays[i][k]));
      out += std::string(i ? "," : "") + "\n    " + int_list(c);
    }
    out += "\n  ],\n  \"max_cones\": [";
    for (std::size_t i = 0; i < f.max_cones.size(); ++i) {
      std::vector<std::string> c;
      for (auto k : f.max_cones[i]) c.push_back(std::to_string(k));
      out += std::string(i ? "," : "") + "\n    " + int_list(c);
    }
    out += "\n  ]";
  }
  if (!f.chow_basis_hint.empty()) {
    std::vector<std::string> h;
    for (const auto& [a, b] : f.chow_basis_hint) h.push_back("[" + std::to_string(a) + "," + std::to_string(b) + "]");
    out += ",\n  \"chow_basis_hint\": " + int_list(h);
  }
  return out + "\n}\n";
}

Fan to_fan(const FanFile& f) {
  if (f.presentation) return fan_from_primitive_data(f.name, *f.presentation);
  return Fan(f.name, f.rays, f.max_cones);
}

FanFile fan_file_of(const Fan& fan, std::string type, std::string provenance) {
  FanFile f;
  f.name = fan.name();
  f.type = std::move(type);
  f.provenance = std::move(provenance);
  f.rays = fan.rays();
  f.max_cones = fan.max_cones();
  return f;
}

Fan fan_from_collections(const std::string& name, std::vector<LatticeVector> rays,
                         const std::vector<std::vector<std::size_t>>& collections) {
  const std::size_t n = rays.size();
  std::vector<RayMask> masks;
  for (const auto& c : collections) masks.push_back(mask_of(c));
  std::vector<Cone> cones;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        for (std::size_t d = c + 1; d < n; ++d) {
          const RayMask m = bit(a) | bit(b) | bit(c) | bit(d);
          if (std::none_of(masks.begin(), masks.end(), [&](RayMask pc) { return (pc & m) == pc; })) {
            cones.push_back({a, b, c, d});
          }
        }
  Fan fan(name, std::move(rays), std::move(cones));
  const auto report = validate(fan);
  if (!report.ok()) {
    throw Error(ErrorKind::ValidationFailed,
                "'" + name + "' is not smooth and complete" +
                    (report.problems.empty() ? std::string() : ": " + report.problems.front()));
  }
  return fan;
}

Fan build_fa_bundle(long a, long s, long t) {
  std::vector<LatticeVector> rays{{1, 0, 0, 0}, {0, 1, 0, 0}, {-1, -1, s, t}, {0, 0, 1, 0},
                                  {0, 0, -1, a}, {0, 0, 0, 1}, {0, 0, 0, -1}};
  const std::string name = "Fa[a=" + std::to_string(a) + ",s=" + std::to_string(s) + ",t=" + std::to_string(t) + "]";
  return fan_from_collections(name, std::move(rays), {{0, 1, 2}, {3, 4}, {5, 6}});
}

Family parse_family(std::string_view name) {
  if (name == "I") return Family::I;
  if (name == "L") return Family::L;
  if (name == "M") return Family::M;
  throw Error(ErrorKind::UnknownFamily, "unknown family '" + std::string(name) + "'");
}

Fan build_family(Family family, const std::vector<long>& p) {
  auto need = [&](std::size_t k, const char* fam) {
    if (p.size() != k) {
      throw Error(ErrorKind::ValidationFailed,
                  std::string("family ") + fam + " takes " + std::to_string(k) + " parameters");
    }
  };
  auto label = [&](const char* fam) {
    std::string s = std::string(fam) + "[";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
    return s + "]";
  };
  switch (family) {
    case Family::I: {
      need(3, "I");
      const long a = p[0], b = p[1], c = p[2];
      return fan_from_collections(label("I"),
                                  {{1, 0, 0, 0}, {-1, b, 0, c}, {0, 1, 0, 0}, {0, 0, 1, 0},
                                   {0, -1, -1, a + 1}, {0, 0, 0, -1}, {0, 1, 0, -1}, {0, 0, 0, 1}},
                                  {{2, 3, 4}, {3, 4, 6}, {6, 7}, {2, 5}, {5, 7}, {0, 1}});
    }
    case Family::L: {
      need(4, "L");
      const long a = p[0], b = p[1], c = p[2], d = p[3];
      return fan_from_collections(label("L"),
                                  {{0, 1, 0, 0}, {-1, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0},
                                   {a, b, -1, 0}, {0, 0, 0, 1}, {c, d, 0, -1}, {0, -1, 0, 0}},
                                  {{0, 7}, {1, 2}, {3, 4}, {5, 6}});
    }
    case Family::M: {
      need(3, "M");
      const long a = p[0], b = p[1], c = p[2];
      return fan_from_collections(label("M"),
                                  {{1, 0, 0, 0}, {0, 1, 0, 0}, {-1, -1, 1, 1}, {0, 0, 1, 0},
                                   {a, 0, -1, 0}, {0, 0, 0, 1}, {a * c + b, 0, -c, -1}, {-1, 0, 0, 0}},
                                  {{0, 7}, {0, 1, 2}, {3, 5, 7}, {3, 4}, {5, 6}, {1, 2, 4}, {1, 2, 6}});
    }
  }
  throw Error(ErrorKind::UnknownFamily, "unknown family");
}

namespace {

// 1-based shorthand for presentations.
SymbolicRelation rel(std::vector<std::size_t> lhs, std::vector<std::pair<std::size_t, long>> rhs = {}) {
  SymbolicRelation r;
  for (auto i : lhs) r.lhs.push_back(i - 1);
  for (auto [j, c] : rhs)
    if (c != 0) r.rhs.emplace_back(j - 1, Integer(c));
  return r;
}

}  // namespace

PrimitivePresentation g1_presentation(long a) {
  PrimitivePresentation p;
  p.n = 7;
  p.basis = {0, 1, 3, 4};
  p.relations = {rel({1, 7}), rel({2, 3, 4}, {{1, a}}), rel({4, 5, 6}, {{1, a + 1}}),
                 rel({5, 6, 7}, {{2, 1}, {3, 1}}), rel({1, 2, 3}, {{5, 1}, {6, 1}})};
  return p;
}

PrimitivePresentation l5_presentation(long a) {
  PrimitivePresentation p;
  p.n = 8;
  p.basis = {0, 1, 3, 5};
  p.relations = {rel({1, 8}), rel({2, 3}), rel({4, 5}, {{3, a}}), rel({6, 7}, {{3, a}})};
  return p;
}

PrimitivePresentation l12_presentation() {
  PrimitivePresentation p;
  p.n = 8;
  p.basis = {0, 1, 3, 5};
  p.relations = {rel({1, 8}), rel({2, 3}, {{1, 1}}), rel({4, 5}, {{8, 1}}), rel({6, 7}, {{4, 1}})};
  return p;
}

PrimitivePresentation j2_presentation() {
  PrimitivePresentation p;
  p.n = 8;
  p.basis = {0, 1, 3, 4};
  p.relations = {rel({3, 6}, {{7, 1}}),         rel({1, 2, 8}, {{4, 1}, {5, 1}}),
                 rel({4, 5, 6}, {{1, 1}, {2, 1}}), rel({7, 8}, {{3, 1}}),
                 rel({6, 8}),                    rel({3, 4, 5}, {{8, 1}}),
                 rel({4, 5, 7}),                 rel({1, 2, 3}),
                 rel({1, 2, 7}, {{6, 1}})};
  return p;
}

PrimitivePresentation m5_presentation() {
  PrimitivePresentation p;
  p.n = 8;
  p.basis = {0, 1, 3, 5};
  p.relations = {rel({1, 8}, {{5, 1}}),         rel({4, 5}, {{7, 1}}),
                 rel({6, 7}, {{1, 1}}),         rel({1, 2, 3}, {{6, 1}}),
                 rel({2, 3, 5}, {{6, 1}, {8, 1}}), rel({2, 3, 7}),
                 rel({4, 6, 8})};
  return p;
}

namespace {

struct LowFan {
  std::string label;
  std::size_t dim;
  std::vector<std::vector<long>> rays;
  std::vector<std::vector<std::size_t>> cones;
};

LowFan projective_space(std::size_t d) {
  LowFan f{"P" + std::to_string(d), d, {}, {}};
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<long> e(d, 0);
    e[i] = 1;
    f.rays.push_back(e);
  }
  f.rays.emplace_back(d, -1L);
  for (std::size_t skip = 0; skip <= d; ++skip) {
    std::vector<std::size_t> c;
    for (std::size_t i = 0; i <= d; ++i)
      if (i != skip) c.push_back(i);
    f.cones.push_back(c);
  }
  return f;
}

// Smooth complete surface from rays in cyclic order.
LowFan polygon(std::string label, std::vector<std::vector<long>> rays) {
  LowFan f{std::move(label), 2, std::move(rays), {}};
  for (std::size_t i = 0; i < f.rays.size(); ++i) {
    std::vector<std::size_t> c{i, (i + 1) % f.rays.size()};
    std::sort(c.begin(), c.end());
    f.cones.push_back(c);
  }
  return f;
}

std::vector<LowFan> del_pezzo_surfaces() {
  return {projective_space(2),
          polygon("P1xP1", {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}),
          polygon("F1", {{1, 0}, {1, 1}, {0, 1}, {-1, -1}}),
          polygon("dP7", {{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}}),
          polygon("dP6", {{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}})};
}

Fan product(const std::string& name, const LowFan& a, const LowFan& b) {
  if (a.dim + b.dim != 4) throw Error(ErrorKind::Internal, "product must have dimension 4");
  std::vector<LatticeVector> rays;
  for (const auto& r : a.rays) {
    LatticeVector v;
    for (std::size_t k = 0; k < a.dim; ++k) v[k] = r[k];
    rays.push_back(v);
  }
  for (const auto& r : b.rays) {
    LatticeVector v;
    for (std::size_t k = 0; k < b.dim; ++k) v[a.dim + k] = r[k];
    rays.push_back(v);
  }
  std::vector<Cone> cones;
  for (const auto& ca : a.cones)
    for (const auto& cb : b.cones) {
      Cone c{};
      std::size_t k = 0;
      for (auto i : ca) c[k++] = i;
      for (auto i : cb) c[k++] = a.rays.size() + i;
      cones.push_back(c);
    }
  return Fan(name, std::move(rays), std::move(cones));
}

void add(std::vector<CatalogEntry>& out, std::string label, std::string provenance, FanFile file) {
  if (file.type.empty()) file.type = label;
  if (file.provenance.empty()) file.provenance = provenance;
  Fan fan = to_fan(file);
  const auto report = validate(fan);
  if (!report.ok()) throw Error(ErrorKind::Internal, "builtin fan " + label + " does not validate");
  out.push_back(CatalogEntry{std::move(label), std::move(provenance), std::move(file), std::move(fan)});
}

void add_fan(std::vector<CatalogEntry>& out, const std::string& label, const std::string& provenance,
             const Fan& fan) {
  add(out, label, provenance, fan_file_of(fan.renamed(label), label, provenance));
}

void add_presentation(std::vector<CatalogEntry>& out, const std::string& label,
                      const std::string& provenance, PrimitivePresentation p,
                      std::vector<IndexPair> hint = {}) {
  FanFile f;
  f.name = label;
  f.type = label;
  f.provenance = provenance;
  f.presentation = std::move(p);
  f.chow_basis_hint = std::move(hint);
  add(out, label, provenance, std::move(f));
}

std::vector<CatalogEntry> make_builtin() {
  std::vector<CatalogEntry> out;
  for (long a = 1; a <= 3; ++a) {
    const std::string label = a == 1 ? "G1" : "G1[a=" + std::to_string(a) + "]";
    add_presentation(out, label, "primitive relations, G1 family with a=" + std::to_string(a), g1_presentation(a));
  }
  for (long a = 1; a <= 3; ++a) {
    const std::string label = a == 1 ? "L5" : "L5[a=" + std::to_string(a) + "]";
    add_presentation(out, label, "primitive relations, L5 family with a=" + std::to_string(a), l5_presentation(a));
  }
  struct Fa { const char* label; long a, s, t; };
  for (const Fa& d : {Fa{"D1", 1, 0, 2}, Fa{"D2", 1, 2, 0}, Fa{"D3", 1, 1, 1}, Fa{"D5", 0, 2, 0},
                      Fa{"D6", 1, 0, 1}, Fa{"D8", 1, 1, 0}, Fa{"D9", 0, 1, 1}, Fa{"D12", 0, 1, 0},
                      Fa{"D16", 1, 1, -1}}) {
    add_fan(out, d.label,
            "F_a-bundle over P2 with a=" + std::to_string(d.a) + ", s=" + std::to_string(d.s) +
                ", t=" + std::to_string(d.t),
            build_fa_bundle(d.a, d.s, d.t));
  }
  struct Fam { const char* label; Family f; std::vector<long> p; const char* desc; };
  for (const Fam& e : std::vector<Fam>{
           {"I4", Family::I, {1, 1, -1}, "I family with (a,b,c)=(1,1,-1)"},
           {"I6", Family::I, {0, 1, 0}, "I family with (a,b,c)=(0,1,0)"},
           {"I12", Family::I, {0, 0, -1}, "I family with (a,b,c)=(0,0,-1)"},
           {"I15", Family::I, {1, 0, -1}, "I family with (a,b,c)=(1,0,-1)"},
           {"L1", Family::L, {0, 1, 0, 1}, "L family with (a,b,c,d)=(0,1,0,1)"},
           {"L2", Family::L, {1, 0, 1, 0}, "L family with (a,b,c,d)=(1,0,1,0)"},
           {"L10", Family::L, {1, 0, -1, 1}, "L family with (a,b,c,d)=(1,0,-1,1)"},
           {"M1", Family::M, {0, 0, 0}, "M family with (a,b,c)=(0,0,0)"},
           {"M2", Family::M, {1, 1, 0}, "M family with (a,b,c)=(1,1,0)"},
           {"M3", Family::M, {1, 0, 1}, "M family with (a,b,c)=(1,0,1)"},
           {"M4", Family::M, {1, 0, 0}, "M family with (a,b,c)=(1,0,0)"}}) {
    add_fan(out, e.label, e.desc, build_family(e.f, e.p));
  }
  add_presentation(out, "J2", "primitive relations of type J2", j2_presentation());
  add_presentation(out, "L12", "primitive relations of type L12", l12_presentation(),
                   {{2, 4}, {2, 6}, {2, 7}, {4, 6}, {4, 7}, {6, 7}});
  add_presentation(out, "M5", "primitive relations of type M5", m5_presentation());

  {
    const LowFan p4 = projective_space(4);
    std::vector<LatticeVector> rays;
    for (const auto& r : p4.rays) rays.emplace_back(r[0], r[1], r[2], r[3]);
    add_fan(out, "P4", "projective space", fan_from_collections("P4", rays, {{0, 1, 2, 3, 4}}));
    rays.emplace_back(1, 1, 1, 1);
    add_fan(out, "BlP4pt", "blow-up of P4 at a torus-fixed point",
            fan_from_collections("BlP4pt", rays, {{0, 1, 2, 3}, {4, 5}}));
  }
  add_fan(out, "P1xP3", "product", product("P1xP3", projective_space(1), projective_space(3)));
  const auto surfaces = del_pezzo_surfaces();
  for (std::size_t i = 0; i < surfaces.size(); ++i)
    for (std::size_t j = i; j < surfaces.size(); ++j) {
      const std::string label = surfaces[i].label + "x" + surfaces[j].label;
      add_fan(out, label, "product of toric del Pezzo surfaces", product(label, surfaces[i], surfaces[j]));
    }
  return out;
}

}  // namespace

const std::vector<CatalogEntry>& builtin_catalog() {
  static const std::vector<CatalogEntry> catalog = make_builtin();
  return catalog;
}

std::optional<CatalogEntry> builtin_entry(std::string_view label) {
  for (const auto& e : builtin_catalog())
    if (e.type_label == label) return e;
  return std::nullopt;
}

std::vector<CatalogEntry> load_catalog_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw Error(ErrorKind::ParseError, dir.string() + " is not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<CatalogEntry> out;
  for (const auto& p : files) {
    FanFile f = load_fan_file(p);
    std::string label = f.type.empty() ? f.name : f.type;
    std::string prov = f.provenance.empty() ? "user-supplied" : f.provenance;
    Fan fan = to_fan(f);
    out.push_back(CatalogEntry{std::move(label), std::move(prov), std::move(f), std::move(fan)});
  }
  return out;
}

}  // namespace abeltoric
