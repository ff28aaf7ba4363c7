#include "abeltoric/replay.hpp"

#include <algorithm>
#include <map>
#include <functional>
#include <numeric>
#include <optional>
#include <set>

#include "abeltoric/arith.hpp"
#include "abeltoric/lattice.hpp"
#include "abeltoric/linalg.hpp"
#include "json.hpp"

namespace abeltoric::replay {

using nlohmann::json;

namespace {

struct Failure {
  std::string what;
};

[[noreturn]] void fail(const std::string& msg) { throw Failure{msg}; }

void expect(bool cond, const std::string& msg) {
  if (!cond) fail(msg);
}

Integer as_int(const json& j) {
  expect(j.is_number_integer(), "expected an integer");
  return Integer(j.get<long>());
}

std::size_t as_index(const json& j, std::size_t n) {
  expect(j.is_number_unsigned() || (j.is_number_integer() && j.get<long>() >= 0), "expected an index");
  const auto v = j.get<std::size_t>();
  expect(v < n, "index out of range");
  return v;
}

Rational as_rational(const json& j) {
  expect(j.is_string(), "expected a rational string");
  Rational q;
  try {
    q = Rational(j.get<std::string>());
  } catch (...) {
    fail("malformed rational");
  }
  expect(q.get_den() != 0, "zero denominator");
  q.canonicalize();
  return q;
}

using Pair = std::pair<std::size_t, std::size_t>;

Pair as_pair(const json& j, std::size_t n) {
  expect(j.is_array() && j.size() == 2, "expected an index pair");
  std::size_t a = as_index(j[0], n), b = as_index(j[1], n);
  return {std::min(a, b), std::max(a, b)};
}

struct Geometry {
  std::size_t n = 0;
  std::vector<LatticeVector> rays;
  std::vector<std::array<std::size_t, 4>> cones;
  std::vector<std::set<std::size_t>> cone_sets;

  bool is_face(const std::set<std::size_t>& s) const {
    for (const auto& c : cone_sets)
      if (std::includes(c.begin(), c.end(), s.begin(), s.end())) return true;
    return false;
  }
  Basis4 basis(std::size_t c) const {
    return {rays[cones[c][0]], rays[cones[c][1]], rays[cones[c][2]], rays[cones[c][3]]};
  }
  Rational pair(const std::array<Rational, 4>& m, std::size_t k) const {
    Rational s = 0;
    for (std::size_t i = 0; i < 4; ++i) s += m[i] * rays[k][i];
    return s;
  }
};

Geometry read_fan(const json& f) {
  Geometry g;
  expect(f.is_object(), "missing fan");
  for (const auto& r : f.at("rays")) {
    expect(r.is_array() && r.size() == 4, "ray needs 4 coordinates");
    g.rays.emplace_back(std::array<Integer, 4>{as_int(r[0]), as_int(r[1]), as_int(r[2]), as_int(r[3])});
  }
  g.n = g.rays.size();
  expect(g.n >= 5, "too few rays");
  for (const auto& c : f.at("max_cones")) {
    expect(c.is_array() && c.size() == 4, "cone needs 4 indices");
    std::array<std::size_t, 4> cone;
    for (std::size_t k = 0; k < 4; ++k) cone[k] = as_index(c[k], g.n);
    std::sort(cone.begin(), cone.end());
    expect(std::adjacent_find(cone.begin(), cone.end()) == cone.end(), "repeated index in cone");
    g.cones.push_back(cone);
    g.cone_sets.emplace_back(cone.begin(), cone.end());
  }
  return g;
}

// Smooth, complete, primitive rays.
void check_fan(const Geometry& g) {
  for (std::size_t k = 0; k < g.n; ++k) {
    Integer c = 0;
    for (std::size_t i = 0; i < 4; ++i) c = gcd(c, g.rays[k][i]);
    expect(c == 1, "ray " + std::to_string(k) + " is not primitive");
    expect(g.is_face({k}), "ray " + std::to_string(k) + " is unused");
  }
  for (std::size_t c = 0; c < g.cones.size(); ++c) {
    const Integer d = det4(g.basis(c));
    expect(d == 1 || d == -1, "cone " + std::to_string(c) + " is not unimodular");
  }
  // Every facet has exactly two cones, on opposite sides.
  std::map<std::array<std::size_t, 3>, std::vector<std::pair<std::size_t, std::size_t>>> facets;
  for (std::size_t c = 0; c < g.cones.size(); ++c)
    for (std::size_t drop = 0; drop < 4; ++drop) {
      std::array<std::size_t, 3> f{};
      std::size_t t = 0;
      for (std::size_t k = 0; k < 4; ++k)
        if (k != drop) f[t++] = g.cones[c][k];
      facets[f].emplace_back(c, g.cones[c][drop]);
    }
  std::vector<std::size_t> parent(g.cones.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [f, owners] : facets) {
    expect(owners.size() == 2, "a facet is not shared by exactly two cones");
    const auto side = [&](std::size_t apex) {
      return sign(det4(g.rays[f[0]], g.rays[f[1]], g.rays[f[2]], g.rays[apex]));
    };
    expect(side(owners[0].second) * side(owners[1].second) < 0, "two cones on the same side of a facet");
    parent[find(owners[0].first)] = find(owners[1].first);
  }
  for (std::size_t c = 0; c < g.cones.size(); ++c) expect(find(c) == find(0), "cone adjacency graph is disconnected");
  // Covering degree one at a generic point.
  for (long t = 2;; ++t) {
    const LatticeVector p(1, t, t * t, t * t * t);
    std::size_t inside = 0;
    bool degenerate = false;
    for (std::size_t c = 0; c < g.cones.size(); ++c) {
      const auto coords = rational_coordinates(p, g.basis(c));
      if (std::any_of(coords.begin(), coords.end(), [](const Rational& q) { return q == 0; })) degenerate = true;
      if (std::all_of(coords.begin(), coords.end(), [](const Rational& q) { return q > 0; })) ++inside;
    }
    if (degenerate) {
      expect(t < 64, "no generic test point found");
      continue;
    }
    expect(inside == 1, "fan does not cover space exactly once");
    break;
  }
}

void check_projectivity(const Geometry& g, const json& ample) {
  expect(ample.is_array() && ample.size() == g.n, "ample witness has wrong length");
  std::vector<Integer> a;
  for (const auto& x : ample) a.push_back(as_int(x));
  for (std::size_t c1 = 0; c1 < g.cones.size(); ++c1)
    for (std::size_t c2 = c1 + 1; c2 < g.cones.size(); ++c2) {
      std::vector<std::size_t> common;
      std::set_intersection(g.cone_sets[c1].begin(), g.cone_sets[c1].end(), g.cone_sets[c2].begin(),
                            g.cone_sets[c2].end(), std::back_inserter(common));
      if (common.size() != 3) continue;
      std::size_t u = 0, w = 0;
      for (auto k : g.cones[c1])
        if (!g.cone_sets[c2].count(k)) u = k;
      for (auto k : g.cones[c2])
        if (!g.cone_sets[c1].count(k)) w = k;
      // x_u + x_w in the basis of cone c1: coefficient -1 on u expected after moving.
      const auto coords = rational_coordinates(g.rays[u] + g.rays[w], g.basis(c1));
      Rational value = Rational(a[u]) + Rational(a[w]);
      for (std::size_t k = 0; k < 4; ++k) {
        const std::size_t r = g.cones[c1][k];
        if (r == u) {
          expect(coords[k] == 0, "wall relation has a term on the opposite ray");
          continue;
        }
        value -= coords[k] * a[r];
      }
      expect(value > 0, "ample witness fails strict convexity on a wall");
    }
}

struct Zeros {
  std::size_t n;
  std::vector<bool> bits;
  explicit Zeros(std::size_t n_) : n(n_), bits(n_ * n_, false) {}
  bool has(std::size_t i, std::size_t j) const { return bits[i * n + j]; }
  void add(std::size_t i, std::size_t j) { bits[i * n + j] = bits[j * n + i] = true; }
};

struct Table {
  std::size_t n = 0;
  std::map<std::array<std::size_t, 4>, Integer> values;
  Integer at(std::array<std::size_t, 4> k) const {
    std::sort(k.begin(), k.end());
    auto it = values.find(k);
    return it == values.end() ? Integer(0) : it->second;
  }
  Integer pp(const Pair& a, const Pair& b) const { return at({a.first, a.second, b.first, b.second}); }
};

// Intersection numbers are determined by: 1 on cones, 0 off faces, and
// annihilation by every character against every cubic monomial.
Table read_table(const Geometry& g, const json& entries) {
  Table t;
  t.n = g.n;
  for (const auto& e : entries) {
    expect(e.is_array() && e.size() == 5, "table entry needs 4 indices and a value");
    std::array<std::size_t, 4> k{};
    for (std::size_t i = 0; i < 4; ++i) k[i] = as_index(e[i], g.n);
    std::sort(k.begin(), k.end());
    expect(!t.values.count(k), "duplicate table entry");
    t.values[k] = as_int(e[4]);
  }
  for (const auto& c : g.cones) expect(t.at(c) == 1, "table value on a maximal cone is not 1");
  for (const auto& [k, v] : t.values) {
    if (v == 0) continue;
    const std::set<std::size_t> support(k.begin(), k.end());
    expect(g.is_face(support), "nonzero table value off the faces");
  }
  const std::size_t n = g.n;
  for (std::size_t e = 0; e < 4; ++e) {
    std::array<Rational, 4> m{};
    m[e] = 1;
    std::vector<Integer> r(n);
    for (std::size_t k = 0; k < n; ++k) r[k] = numerator(g.pair(m, k));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = j; k < n; ++k)
        for (std::size_t l = k; l < n; ++l) {
          Integer s = 0;
          for (std::size_t i = 0; i < n; ++i)
            if (r[i] != 0) s += r[i] * t.at({i, j, k, l});
          expect(s == 0, "table violates linear equivalence");
        }
  }
  return t;
}

bool connected(const Zeros& z, const std::vector<std::size_t>& vs) {
  if (vs.empty()) return false;
  std::set<std::size_t> seen{vs[0]};
  std::vector<std::size_t> stack{vs[0]};
  while (!stack.empty()) {
    auto a = stack.back();
    stack.pop_back();
    for (auto b : vs)
      if (!seen.count(b) && z.has(a, b)) {
        seen.insert(b);
        stack.push_back(b);
      }
  }
  return seen.size() == vs.size();
}

// Z^n = span(e_i, i in S) + image of M iff the rays outside S give a
// surjection Z^4 -> Z^(n-|S|).
bool generates_pic(const Geometry& g, const std::vector<std::size_t>& s) {
  std::vector<std::size_t> rest;
  for (std::size_t k = 0; k < g.n; ++k)
    if (std::find(s.begin(), s.end(), k) == s.end()) rest.push_back(k);
  const std::size_t r = rest.size();
  if (r == 0) return true;
  if (r > 4) return false;
  Integer content = 0;
  std::vector<std::size_t> cols(r);
  std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t start, std::size_t depth) {
    if (depth == r) {
      RationalMatrix a(r, RationalVector(r));
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) a[i][j] = g.rays[rest[i]][cols[j]];
      // Determinant by elimination over Q.
      Rational det = 1;
      for (std::size_t c = 0; c < r; ++c) {
        std::size_t p = c;
        while (p < r && a[p][c] == 0) ++p;
        if (p == r) {
          det = 0;
          break;
        }
        if (p != c) {
          std::swap(a[p], a[c]);
          det = -det;
        }
        det *= a[c][c];
        for (std::size_t i = c + 1; i < r; ++i) {
          const Rational f = a[i][c] / a[c][c];
          for (std::size_t j = c; j < r; ++j) a[i][j] -= f * a[c][j];
        }
      }
      content = gcd(content, numerator(det));
      return;
    }
    for (std::size_t c = start; c < 4; ++c) {
      cols[depth] = c;
      choose(c + 1, depth + 1);
    }
  };
  choose(0, 0);
  return content == 1;
}

struct Checker {
  Geometry g;
  Zeros z{0};
  std::optional<Table> table;
  std::size_t steps = 0;

  void disjoint(const json& s) {
    const Pair p = as_pair(s.at("pair"), g.n);
    expect(p.first != p.second, "DisjointDivisors needs two rays");
    expect(!g.is_face({p.first, p.second}), "DisjointDivisors pair spans a cone");
    z.add(p.first, p.second);
  }

  void relation(const json& s) {
    const std::size_t pivot = as_index(s.at("pivot"), g.n);
    const auto& mj = s.at("m");
    expect(mj.is_array() && mj.size() == 4, "m needs 4 integers");
    std::array<Rational, 4> m;
    for (std::size_t i = 0; i < 4; ++i) m[i] = as_int(mj[i]);
    const auto& rel = s.at("relation");
    expect(rel.is_array() && rel.size() == g.n, "relation vector has wrong length");
    std::set<std::size_t> positive;
    for (std::size_t k = 0; k < g.n; ++k) {
      const Rational v = g.pair(m, k);
      expect(Rational(as_int(rel[k])) == v, "relation vector differs from the pairing with m");
      if (z.has(pivot, k)) continue;
      expect(v >= 0, "relation has a negative survivor");
      if (v > 0) positive.insert(k);
    }
    std::set<std::size_t> concluded;
    for (const auto& c : s.at("concluded")) concluded.insert(as_index(c, g.n));
    expect(!concluded.empty(), "relation step concludes nothing");
    expect(concluded == positive, "concluded pairs differ from the positive survivors");
    for (auto k : concluded) z.add(pivot, k);
  }

  void transitivity(const json& s) {
    const std::size_t i = as_index(s.at("i"), g.n), j = as_index(s.at("j"), g.n), k = as_index(s.at("k"), g.n);
    expect(j != i && j != k, "transitivity needs a distinct middle vertex");
    expect(z.has(i, j) && z.has(j, k), "transitivity premises not established");
    z.add(i, k);
  }

  void chow(const json& s) {
    expect(table.has_value(), "Chow step without an intersection table");
    const Pair target = as_pair(s.at("target"), g.n);
    expect(!z.has(target.first, target.second), "Chow step target already known");
    std::map<Pair, Rational> coeff;
    bool target_positive = false;
    for (const auto& e : s.at("nonnegative")) {
      expect(e.is_array() && e.size() == 2, "malformed multiplier");
      const Pair p = as_pair(e[0], g.n);
      const Rational c = as_rational(e[1]);
      expect(!z.has(p.first, p.second), "nonnegative multiplier on a known zero");
      expect(c >= 0, "negative multiplier on an unknown pair");
      if (p == target && c > 0) target_positive = true;
      coeff[p] += c;
    }
    expect(target_positive, "target multiplier is not positive");
    for (const auto& e : s.at("on_zero_set")) {
      expect(e.is_array() && e.size() == 2, "malformed multiplier");
      const Pair p = as_pair(e[0], g.n);
      expect(z.has(p.first, p.second), "free multiplier on a pair outside Z");
      coeff[p] += as_rational(e[1]);
    }
    // The combination must pair to zero with every degree-2 monomial.
    for (std::size_t a = 0; a < g.n; ++a)
      for (std::size_t b = a; b < g.n; ++b) {
        Rational sum = 0;
        for (const auto& [p, c] : coeff) sum += c * table->pp(p, {a, b});
        expect(sum == 0, "Chow identity fails against a degree-2 monomial");
      }
    if (!s.at("square_of").is_null()) {
      const std::size_t i = as_index(s.at("square_of"), g.n);
      auto it = coeff.find({i, i});
      expect(it != coeff.end() && it->second != 0, "claimed square has no multiplier");
    }
    z.add(target.first, target.second);
  }

  void run_step(const json& s) {
    const std::string rule = s.at("rule").get<std::string>();
    if (rule == "DisjointDivisors") disjoint(s);
    else if (rule == "RelationRule") relation(s);
    else if (rule == "Transitivity") transitivity(s);
    else if (rule == "ChowVanishing") chow(s);
    else fail("unknown rule " + rule);
    ++steps;
  }

  void contradiction(const json& c) {
    const std::string kind = c.at("kind").get<std::string>();
    std::vector<std::size_t> vs;
    for (const auto& v : c.at("vertices")) vs.push_back(as_index(v, g.n));
    std::sort(vs.begin(), vs.end());
    expect(std::adjacent_find(vs.begin(), vs.end()) == vs.end(), "repeated vertex");
    if (kind == "FullGraphConnected") {
      expect(vs.size() == g.n, "full graph must use every vertex");
      expect(connected(z, vs), "zero graph is not connected");
    } else if (kind == "PicGeneratingComponent") {
      for (auto a : vs)
        for (auto b : vs) expect(z.has(a, b), "component is not complete in Z");
      expect(generates_pic(g, vs), "component does not generate Pic");
    } else if (kind == "P1FactorSubgraph") {
      const Pair f = as_pair(c.at("fiber"), g.n);
      expect(f.first != f.second, "fiber needs two rays");
      expect(g.rays[f.first] + g.rays[f.second] == LatticeVector(0, 0, 0, 0), "fiber rays are not opposite");
      const auto& mj = c.at("fiber_projection");
      expect(mj.is_array() && mj.size() == 4, "projection needs 4 integers");
      std::array<Rational, 4> m;
      for (std::size_t i = 0; i < 4; ++i) m[i] = as_int(mj[i]);
      expect(g.pair(m, f.first) == 1, "projection does not send the fiber ray to 1");
      for (std::size_t k = 0; k < g.n; ++k)
        if (k != f.first && k != f.second) expect(g.pair(m, k) == 0, "projection does not vanish off the fiber");
      std::set<std::set<std::size_t>> link_a, link_b;
      for (const auto& cs : g.cone_sets) {
        const bool a = cs.count(f.first), b = cs.count(f.second);
        expect(a != b, "a cone does not contain exactly one fiber ray");
        auto rest = cs;
        rest.erase(a ? f.first : f.second);
        (a ? link_a : link_b).insert(rest);
      }
      expect(link_a == link_b, "fiber rays have different links");
      std::vector<std::size_t> expected;
      for (std::size_t k = 0; k < g.n; ++k)
        if (k != f.first && k != f.second) expected.push_back(k);
      expect(vs == expected, "vertex set is not the complement of the fiber");
      for (std::size_t a = 0; a < vs.size(); ++a)
        for (std::size_t b = a + 1; b < vs.size(); ++b) expect(z.has(vs[a], vs[b]), "complement is not complete");
    } else {
      fail("unknown contradiction kind " + kind);
    }
  }

  void contraction(const json& c) {
    std::vector<std::size_t> col;
    for (const auto& v : c.at("collection")) col.push_back(as_index(v, g.n));
    std::sort(col.begin(), col.end());
    expect(col.size() == 4 && std::adjacent_find(col.begin(), col.end()) == col.end(), "need 4 distinct rays");
    const std::size_t e = as_index(c.at("target"), g.n);
    const Integer k = as_int(c.at("multiplicity"));
    expect(k >= 1, "multiplicity must be positive");
    expect(std::find(col.begin(), col.end(), e) == col.end(), "target inside the collection");
    const std::set<std::size_t> all(col.begin(), col.end());
    expect(!g.is_face(all), "collection spans a cone");
    for (auto drop : col) {
      auto s = all;
      s.erase(drop);
      expect(g.is_face(s), "collection is not minimal");
    }
    LatticeVector sum;
    for (auto i : col) sum += g.rays[i];
    expect(sum == k * g.rays[e], "relation does not hold");
    std::set<std::size_t> nb;
    for (std::size_t j = 0; j < g.n; ++j)
      if (j != e && g.is_face({e, j})) nb.insert(j);
    expect(nb == all, "target ray has neighbours outside the collection");
  }

  // alpha = sum c_p D_p over all pairs; L = {alpha : alpha.D_z = 0, z in Z}.
  void self_intersection() {
    expect(table.has_value(), "Chow conclusion without an intersection table");
    std::vector<Pair> pairs;
    for (std::size_t a = 0; a < g.n; ++a)
      for (std::size_t b = a; b < g.n; ++b) pairs.emplace_back(a, b);
    const std::size_t np = pairs.size();
    RationalMatrix rows;
    for (const auto& zp : pairs) {
      if (!z.has(zp.first, zp.second)) continue;
      RationalVector row(np);
      for (std::size_t q = 0; q < np; ++q) row[q] = table->pp(zp, pairs[q]);
      rows.push_back(std::move(row));
    }
    RationalMatrix basis;
    if (rows.empty()) {
      for (std::size_t q = 0; q < np; ++q) {
        RationalVector e(np, Rational(0));
        e[q] = 1;
        basis.push_back(std::move(e));
      }
    } else {
      basis = nullspace(rows, np);
    }
    std::vector<std::vector<Integer>> gram(np, std::vector<Integer>(np));
    for (std::size_t p = 0; p < np; ++p)
      for (std::size_t q = 0; q < np; ++q) gram[p][q] = table->pp(pairs[p], pairs[q]);
    for (const auto& v : basis) {
      RationalVector gv(np, Rational(0));
      for (std::size_t p = 0; p < np; ++p)
        for (std::size_t q = 0; q < np; ++q)
          if (v[q] != 0) gv[p] += gram[p][q] * v[q];
      for (const auto& w : basis) {
        Rational s = 0;
        for (std::size_t p = 0; p < np; ++p) s += w[p] * gv[p];
        expect(s == 0, "self-intersection does not vanish on the span cut out by Z");
      }
    }
  }
};

}  // namespace

Report check(std::string_view text) {
  Report rep;
  try {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      fail(std::string("invalid JSON: ") + e.what());
    }
    expect(doc.value("format", "") == "toric-abelian-certificate/1", "unknown certificate format");
    Checker ck;
    ck.g = read_fan(doc.at("fan"));
    check_fan(ck.g);
    check_projectivity(ck.g, doc.at("projectivity").at("ample"));
    ck.z = Zeros(ck.g.n);
    const std::string mode = doc.at("mode").get<std::string>();
    const std::string status = doc.at("status").get<std::string>();
    const std::string rule = doc.at("rule").get<std::string>();
    expect(mode == "finite" || mode == "embedding", "unknown mode");
    if (!doc.at("chow").is_null()) {
      expect(mode == "embedding", "Chow data in finite mode");
      ck.table = read_table(ck.g, doc.at("chow").at("intersection_table"));
    }
    for (const auto& s : doc.at("trace")) ck.run_step(s);

    std::set<Pair> claimed;
    for (const auto& p : doc.at("zero_set")) claimed.insert(as_pair(p, ck.g.n));
    for (std::size_t a = 0; a < ck.g.n; ++a)
      for (std::size_t b = a; b < ck.g.n; ++b)
        expect(ck.z.has(a, b) == (claimed.count({a, b}) > 0), "zero set differs from the replayed trace");

    if (status == "Inconclusive") {
      expect(rule == "None", "inconclusive verdict names a rule");
    } else if (rule == "ContractionCriterion") {
      expect(status == "NoFiniteMorphism", "contraction criterion gives NoFiniteMorphism");
      ck.contraction(doc.at("contraction"));
    } else if (rule == "FullGraphConnected" || rule == "PicGeneratingComponent" || rule == "P1FactorSubgraph") {
      expect(status == "NoFiniteMorphism", "graph contradictions give NoFiniteMorphism");
      const auto& c = doc.at("contradiction");
      expect(c.at("kind").get<std::string>() == rule, "contradiction kind differs from the rule");
      ck.contradiction(c);
    } else if (rule == "ChowClassStage") {
      expect(status == "NoEmbedding" && mode == "embedding", "Chow stage gives NoEmbedding in embedding mode");
      const auto& c = doc.at("contradiction");
      if (!c.is_null()) ck.contradiction(c);
      else ck.self_intersection();
    } else {
      fail("unknown rule " + rule);
    }
    rep.steps_checked = ck.steps;
  } catch (const Failure& f) {
    rep.errors.push_back(f.what);
  } catch (const nlohmann::json::exception& e) {
    rep.errors.push_back(std::string("malformed certificate: ") + e.what());
  } catch (const std::exception& e) {
    rep.errors.push_back(std::string("replay error: ") + e.what());
  }
  rep.ok = rep.errors.empty();
  return rep;
}

}  // namespace abeltoric::replay
