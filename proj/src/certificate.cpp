#include "abeltoric/certificate.hpp"

#include "json.hpp"

namespace abeltoric {

using nlohmann::json;

namespace {

json integer(const Integer& v) { return to_int64(v); }

json rational(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

json pair(const IndexPair& p) { return json::array({p.first, p.second}); }

json ints(const std::vector<Integer>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(integer(x));
  return out;
}

json rationals(const RationalVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(rational(x));
  return out;
}

json weighted(const std::vector<std::pair<IndexPair, Rational>>& v) {
  json out = json::array();
  for (const auto& [p, c] : v) out.push_back(json::array({pair(p), rational(c)}));
  return out;
}

json chow_step(const step::ChowVanishing& s) {
  return {{"rule", "ChowVanishing"},
          {"target", pair(s.target)},
          {"nonnegative", weighted(s.nonnegative)},
          {"on_zero_set", weighted(s.on_zero_set)},
          {"square_of", s.square_of ? json(*s.square_of) : json(nullptr)}};
}

json step_json(const TraceStep& t) {
  struct V {
    json operator()(const step::DisjointDivisors& s) const {
      return {{"rule", "DisjointDivisors"}, {"pair", json::array({s.i, s.j})}};
    }
    json operator()(const step::RelationRule& s) const {
      json m = json::array();
      for (const auto& x : s.m) m.push_back(integer(x));
      return {{"rule", "RelationRule"}, {"pivot", s.pivot}, {"m", m}, {"relation", ints(s.relation)},
              {"concluded", s.concluded}};
    }
    json operator()(const step::Transitivity& s) const {
      return {{"rule", "Transitivity"}, {"i", s.i}, {"j", s.j}, {"k", s.k}};
    }
    json operator()(const step::ChowVanishing& s) const { return chow_step(s); }
  };
  return std::visit(V{}, t);
}

}  // namespace

std::string certificate_json(const Fan& fan, const Verdict& v) {
  json doc;
  doc["format"] = kCertificateFormat;
  json f;
  f["name"] = fan.name();
  f["rays"] = json::array();
  for (const auto& r : fan.rays()) {
    f["rays"].push_back(json::array({integer(r[0]), integer(r[1]), integer(r[2]), integer(r[3])}));
  }
  f["max_cones"] = fan.max_cones();
  doc["fan"] = f;
  doc["mode"] = mode_name(v.mode);
  doc["status"] = status_name(v.status);
  doc["rule"] = rule_name(v.rule);
  doc["projectivity"] = {{"ample", ints(v.ample)}};

  json trace = json::array();
  for (const auto& s : v.state.trace) trace.push_back(step_json(s));
  doc["trace"] = trace;
  json zs = json::array();
  for (const auto& p : v.state.zero_set.pairs()) zs.push_back(pair(p));
  doc["zero_set"] = zs;

  if (v.contradiction) {
    const auto& c = *v.contradiction;
    json cj = {{"kind", contradiction_kind_name(c.kind)},
               {"vertices", c.vertices},
               {"relies_on_pic_generation", c.relies_on_pic_generation}};
    if (c.fiber) cj["fiber"] = *c.fiber;
    if (c.fiber_projection) {
      json m = json::array();
      for (const auto& x : *c.fiber_projection) m.push_back(integer(x));
      cj["fiber_projection"] = m;
    }
    doc["contradiction"] = cj;
  } else {
    doc["contradiction"] = nullptr;
  }

  if (v.contraction) {
    doc["contraction"] = {{"collection", v.contraction->collection},
                          {"target", v.contraction->target},
                          {"multiplicity", integer(v.contraction->multiplicity)}};
  } else {
    doc["contraction"] = nullptr;
  }

  if (v.chow && v.table) {
    const auto& c = *v.chow;
    const auto& table = *v.table;
    json cj;
    json basis = json::array();
    for (const auto& p : c.basis.monomials) basis.push_back(pair(p));
    cj["basis"] = basis;
    cj["hint_used"] = c.basis.hint_used;
    json entries = json::array();
    const std::size_t n = table.size();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a; b < n; ++b)
        for (std::size_t cc = b; cc < n; ++cc)
          for (std::size_t d = cc; d < n; ++d) {
            const auto& val = table(a, b, cc, d);
            if (val != 0) entries.push_back(json::array({a, b, cc, d, integer(val)}));
          }
    cj["intersection_table"] = entries;
    json forced = json::array();
    for (const auto& s : c.forced) forced.push_back(chow_step(s));
    cj["forced"] = forced;
    json zf = json::array();
    for (const auto& [p, fv] : c.zero_functionals) zf.push_back({{"pair", pair(p)}, {"coefficients", rationals(fv)}});
    cj["zero_functionals"] = zf;
    json span = json::array();
    for (const auto& row : c.span) span.push_back(rationals(row));
    cj["span"] = span;
    cj["vanishing_coordinates"] = c.vanishing_coordinates;
    cj["vanishing_reason"] = c.vanishing_reason;
    json gram = json::array();
    for (const auto& row : c.gram) gram.push_back(rationals(row));
    cj["gram"] = gram;
    cj["self_intersection_vanishes"] = c.self_intersection_vanishes;
    doc["chow"] = cj;
  } else {
    doc["chow"] = nullptr;
  }
  return doc.dump(2) + "\n";
}

}  // namespace abeltoric
