#pragma once

// Reference implementations used only by the tests. Each one is written
// against first principles and shares nothing with the library beyond the
// basic value types.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "abeltoric/arith.hpp"
#include "abeltoric/fan.hpp"
#include "abeltoric/lattice.hpp"
#include "abeltoric/lp.hpp"

namespace oracle {

using abeltoric::Integer;
using abeltoric::Rational;

// Leibniz expansion over all 24 permutations.
inline Integer leibniz_det(const std::array<std::array<Integer, 4>, 4>& m) {
  std::array<int, 4> p{0, 1, 2, 3};
  Integer total = 0;
  do {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (p[i] > p[j]) ++inversions;
    Integer term = 1;
    for (int i = 0; i < 4; ++i) term *= m[i][p[i]];
    total += (inversions % 2 == 0) ? term : Integer(-term);
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

// Product of projective spaces P^{d_1} x ... x P^{d_k}, sum d_i = 4.
// Factor f owns coordinates [off_f, off_f + d_f) and rays e_1..e_d, -sum e.
struct ProductSpace {
  std::vector<int> dims;
  std::vector<abeltoric::LatticeVector> rays;
  std::vector<std::size_t> factor_of;  // ray -> factor
  std::vector<abeltoric::Cone> cones;
};

inline ProductSpace product_of_projective_spaces(const std::vector<int>& dims) {
  ProductSpace out;
  out.dims = dims;
  std::vector<std::vector<std::size_t>> factor_rays(dims.size());
  int offset = 0;
  for (std::size_t f = 0; f < dims.size(); ++f) {
    for (int k = 0; k <= dims[f]; ++k) {
      std::array<Integer, 4> c{0, 0, 0, 0};
      if (k < dims[f]) {
        c[offset + k] = 1;
      } else {
        for (int j = 0; j < dims[f]; ++j) c[offset + j] = -1;
      }
      factor_rays[f].push_back(out.rays.size());
      out.factor_of.push_back(f);
      out.rays.emplace_back(c);
    }
    offset += dims[f];
  }
  // A maximal cone drops exactly one ray from every factor.
  std::vector<std::vector<std::size_t>> partial{{}};
  for (std::size_t f = 0; f < dims.size(); ++f) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& base : partial)
      for (std::size_t drop : factor_rays[f]) {
        auto cone = base;
        for (std::size_t r : factor_rays[f])
          if (r != drop) cone.push_back(r);
        next.push_back(cone);
      }
    partial = std::move(next);
  }
  for (auto& c : partial) {
    std::sort(c.begin(), c.end());
    out.cones.push_back({c[0], c[1], c[2], c[3]});
  }
  return out;
}

inline abeltoric::Fan to_fan(const ProductSpace& p, const std::string& name) {
  return abeltoric::Fan(name, p.rays, p.cones);
}

// D_a D_b D_c D_d on a product of projective spaces: every D in factor f is
// the hyperplane class H_f, and H_1^{e_1}...H_k^{e_k} is 1 exactly when
// e_f = d_f for all f.
inline Integer multinomial_degree(const ProductSpace& p, const std::array<std::size_t, 4>& idx) {
  std::vector<int> exponent(p.dims.size(), 0);
  for (std::size_t i : idx) ++exponent[p.factor_of[i]];
  for (std::size_t f = 0; f < p.dims.size(); ++f)
    if (exponent[f] != p.dims[f]) return 0;
  return 1;
}

// Minimal non-faces by enumerating every subset of rays.
inline std::vector<std::vector<std::size_t>> brute_force_primitive_collections(
    const abeltoric::Fan& fan) {
  const std::size_t n = fan.size();
  auto is_face = [&](std::uint64_t mask) {
    for (std::size_t c = 0; c < fan.max_cones().size(); ++c)
      if ((fan.cone_mask(c) & mask) == mask) return true;
    return false;
  };
  std::vector<std::vector<std::size_t>> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    if (is_face(mask)) continue;
    bool minimal = true;
    for (std::size_t i = 0; i < n && minimal; ++i)
      if ((mask >> i & 1) && !is_face(mask & ~(std::uint64_t{1} << i))) minimal = false;
    if (!minimal) continue;
    std::vector<std::size_t> v;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) v.push_back(i);
    out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Fourier-Motzkin feasibility for a system of rows a.x >= b over Q.
// Equalities are passed as two inequalities; all variables are free.
struct Inequality {
  std::vector<Rational> a;
  Rational b;
};

inline bool fourier_motzkin_feasible(std::vector<Inequality> rows, std::size_t vars) {
  for (std::size_t v = vars; v-- > 0;) {
    std::vector<Inequality> pos, neg, rest;
    for (auto& r : rows) {
      int s = sgn(r.a[v]);
      (s > 0 ? pos : s < 0 ? neg : rest).push_back(std::move(r));
    }
    for (const auto& p : pos)
      for (const auto& q : neg) {
        // p.a[v] > 0, q.a[v] < 0: scale and add to cancel x_v.
        Rational sp = -q.a[v], sq = p.a[v];
        Inequality c;
        c.a.resize(vars);
        for (std::size_t k = 0; k < vars; ++k) c.a[k] = sp * p.a[k] + sq * q.a[k];
        c.b = sp * p.b + sq * q.b;
        rest.push_back(std::move(c));
      }
    rows = std::move(rest);
  }
  for (const auto& r : rows)
    if (r.b > 0) return false;  // 0 >= b
  return true;
}

inline std::vector<Inequality> to_inequalities(const abeltoric::lp::Problem& p) {
  std::vector<Inequality> out;
  for (const auto& c : p.constraints) {
    Inequality ge{c.coeffs, c.rhs};
    Inequality le;
    le.a.resize(c.coeffs.size());
    for (std::size_t k = 0; k < c.coeffs.size(); ++k) le.a[k] = -c.coeffs[k];
    le.b = -c.rhs;
    switch (c.relation) {
      case abeltoric::lp::Relation::GreaterEqual: out.push_back(ge); break;
      case abeltoric::lp::Relation::LessEqual: out.push_back(le); break;
      case abeltoric::lp::Relation::Equal:
        out.push_back(ge);
        out.push_back(le);
        break;
    }
  }
  for (std::size_t v = 0; v < p.num_vars; ++v)
    if (p.nonnegative[v]) {
      Inequality r;
      r.a.assign(p.num_vars, 0);
      r.a[v] = 1;
      r.b = 0;
      out.push_back(r);
    }
  return out;
}

inline std::vector<std::array<std::size_t, 4>> all_multisets(std::size_t n) {
  std::vector<std::array<std::size_t, 4>> out;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b)
      for (std::size_t c = b; c < n; ++c)
        for (std::size_t d = c; d < n; ++d) out.push_back({a, b, c, d});
  return out;
}

}  // namespace oracle
