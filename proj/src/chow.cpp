#include "abeltoric/chow.hpp"

#include <algorithm>

#include "abeltoric/error.hpp"

namespace abeltoric {

namespace {

Integer reduce(const Fan& fan, Multiset4 ms, const ReductionChooser* choose,
               const std::function<Integer(Multiset4)>& recurse) {
  std::sort(ms.begin(), ms.end());
  RayMask support = 0;
  for (auto i : ms) support |= bit(i);
  if (!fan.contains_face(support)) return 0;
  const auto distinct = indices_of(support);
  if (distinct.size() == 4) return 1;

  std::vector<std::size_t> repeated;
  for (std::size_t k = 1; k < 4; ++k) {
    if (ms[k] == ms[k - 1] && (repeated.empty() || repeated.back() != ms[k])) repeated.push_back(ms[k]);
  }
  std::vector<std::size_t> cones;
  for (std::size_t c = 0; c < fan.max_cones().size(); ++c) {
    if ((fan.cone_mask(c) & support) == support) cones.push_back(c);
  }
  const std::size_t i = repeated[choose ? (*choose)(repeated.size()) % repeated.size() : 0];
  const std::size_t c = cones[choose ? (*choose)(cones.size()) % cones.size() : 0];

  const auto& cone = fan.max_cones()[c];
  const auto pos = static_cast<std::size_t>(std::find(cone.begin(), cone.end(), i) - cone.begin());
  const DualVector m = dual_basis(fan.cone_basis(c))[pos];

  // D_i = -sum_{k not in cone} <m, x_k> D_k.
  Multiset4 rest = ms;
  *std::find(rest.begin(), rest.end(), i) = SIZE_MAX;
  Integer total = 0;
  for (std::size_t k = 0; k < fan.size(); ++k) {
    if (fan.cone_mask(c) & bit(k)) continue;
    Rational coeff = pairing(m, fan.ray(k));
    if (coeff == 0) continue;
    Multiset4 next = rest;
    *std::find(next.begin(), next.end(), SIZE_MAX) = k;
    std::sort(next.begin(), next.end());
    total -= Integer(coeff.get_num()) * recurse(next);
  }
  return total;
}

}  // namespace

Integer intersection_number(const Fan& fan, Multiset4 indices) {
  for (auto i : indices) {
    if (i >= fan.size()) throw Error(ErrorKind::MalformedFan, "divisor index out of range");
  }
  std::function<Integer(Multiset4)> rec = [&](Multiset4 m) { return reduce(fan, m, nullptr, rec); };
  return rec(indices);
}

Integer intersection_number(const Fan& fan, Multiset4 indices, const ReductionChooser& choose) {
  for (auto i : indices) {
    if (i >= fan.size()) throw Error(ErrorKind::MalformedFan, "divisor index out of range");
  }
  std::function<Integer(Multiset4)> rec = [&](Multiset4 m) { return reduce(fan, m, &choose, rec); };
  return rec(indices);
}

IntersectionTable::IntersectionTable(const Fan& fan) : n_(fan.size()) {
  values_.assign(n_ * n_ * n_ * n_, Integer(0));
  std::vector<bool> done(values_.size(), false);
  std::function<Integer(Multiset4)> rec = [&](Multiset4 m) -> Integer {
    std::sort(m.begin(), m.end());
    const std::size_t idx = index(m);
    if (!done[idx]) {
      values_[idx] = reduce(fan, m, nullptr, rec);
      done[idx] = true;
    }
    return values_[idx];
  };
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = a; b < n_; ++b)
      for (std::size_t c = b; c < n_; ++c)
        for (std::size_t d = c; d < n_; ++d) rec(Multiset4{a, b, c, d});
}

std::size_t IntersectionTable::index(Multiset4 m) const {
  return ((m[0] * n_ + m[1]) * n_ + m[2]) * n_ + m[3];
}

const Integer& IntersectionTable::operator()(std::size_t a, std::size_t b, std::size_t c,
                                             std::size_t d) const {
  Multiset4 m{a, b, c, d};
  std::sort(m.begin(), m.end());
  if (m[3] >= n_) throw Error(ErrorKind::MalformedFan, "divisor index out of range");
  return values_[index(m)];
}

std::vector<IndexPair> degree_two_monomials(std::size_t n) {
  std::vector<IndexPair> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) out.emplace_back(i, j);
  return out;
}

std::size_t Codim2Basis::pair_index(const IndexPair& p) const {
  IndexPair q = p.first <= p.second ? p : IndexPair{p.second, p.first};
  auto it = std::lower_bound(pairs.begin(), pairs.end(), q);
  if (it == pairs.end() || *it != q) throw Error(ErrorKind::Internal, "pair out of range");
  return static_cast<std::size_t>(it - pairs.begin());
}

Codim2Basis codim2_basis(const IntersectionTable& table, std::span<const IndexPair> hint) {
  Codim2Basis out;
  const std::size_t n = table.size();
  out.pairs = degree_two_monomials(n);
  const std::size_t np = out.pairs.size();

  RationalMatrix rows(np, RationalVector(np));
  for (std::size_t p = 0; p < np; ++p)
    for (std::size_t q = 0; q < np; ++q) rows[p][q] = table.pair_product(out.pairs[p], out.pairs[q]);
  const std::size_t full_rank = rank(rows, np);

  RationalMatrix chosen;
  auto try_add = [&](const IndexPair& raw) {
    IndexPair p = raw.first <= raw.second ? raw : IndexPair{raw.second, raw.first};
    if (p.second >= n) return false;
    if (std::find(out.monomials.begin(), out.monomials.end(), p) != out.monomials.end()) return false;
    const auto& row = rows[out.pair_index(p)];
    chosen.push_back(row);
    if (rank(chosen, np) == chosen.size()) {
      out.monomials.push_back(p);
      return true;
    }
    chosen.pop_back();
    return false;
  };
  bool hint_ok = !hint.empty();
  for (const auto& p : hint) hint_ok = try_add(p) && hint_ok;
  out.hint_used = hint_ok && out.monomials.size() == full_rank;
  for (std::size_t p = 0; p < np && out.monomials.size() < full_rank; ++p) try_add(out.pairs[p]);
  if (out.monomials.size() != full_rank) {
    throw Error(ErrorKind::RankDeficiency, "could not complete a basis of A^2");
  }

  out.pairing.assign(out.monomials.size(), std::vector<Integer>(np));
  for (std::size_t b = 0; b < out.monomials.size(); ++b)
    for (std::size_t q = 0; q < np; ++q) out.pairing[b][q] = table.pair_product(out.monomials[b], out.pairs[q]);

  out.expansion.assign(np, RationalVector(out.monomials.size()));
  for (std::size_t p = 0; p < np; ++p) {
    auto coeffs = solve_row_combination(chosen, rows[p]);
    if (!coeffs) {
      throw Error(ErrorKind::RankDeficiency, "a degree-2 monomial is not in the span of the basis");
    }
    out.expansion[p] = std::move(*coeffs);
  }
  return out;
}

RationalVector pair_functional(const IntersectionTable& table, const Codim2Basis& basis,
                               const IndexPair& p) {
  RationalVector f(basis.dimension());
  for (std::size_t b = 0; b < basis.dimension(); ++b) f[b] = table.pair_product(p, basis.monomials[b]);
  return f;
}

RationalMatrix basis_gram(const IntersectionTable& table, const Codim2Basis& basis) {
  const std::size_t d = basis.dimension();
  RationalMatrix g(d, RationalVector(d));
  for (std::size_t b = 0; b < d; ++b)
    for (std::size_t c = 0; c < d; ++c) g[b][c] = table.pair_product(basis.monomials[b], basis.monomials[c]);
  return g;
}

Rational c2_pairing(const IntersectionTable& table, const Codim2Basis& basis,
                    std::span<const Rational> alpha) {
  if (alpha.size() != basis.dimension()) throw Error(ErrorKind::Internal, "coefficient count mismatch");
  Rational total = 0;
  const std::size_t n = table.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t b = 0; b < basis.dimension(); ++b) {
        if (alpha[b] != 0) total += alpha[b] * table.pair_product({i, j}, basis.monomials[b]);
      }
  return total;
}

}  // namespace abeltoric
