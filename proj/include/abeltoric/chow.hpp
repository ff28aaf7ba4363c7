#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "abeltoric/fan.hpp"
#include "abeltoric/linalg.hpp"

namespace abeltoric {

using Multiset4 = std::array<std::size_t, 4>;
using IndexPair = std::pair<std::size_t, std::size_t>;  // first <= second

// Picks one option out of `count`; used to vary reduction choices in tests.
using ReductionChooser = std::function<std::size_t(std::size_t count)>;

// Degree of D_a D_b D_c D_d on a smooth complete fan. A repeated index i is
// eliminated with the character dual to x_i in a maximal cone containing the
// support, which trades D_i for divisors outside that cone.
Integer intersection_number(const Fan& fan, Multiset4 indices);
Integer intersection_number(const Fan& fan, Multiset4 indices, const ReductionChooser& choose);

// Every degree-4 monomial, computed once and frozen; safe to share.
class IntersectionTable {
 public:
  explicit IntersectionTable(const Fan& fan);

  std::size_t size() const { return n_; }
  const Integer& operator()(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const;
  const Integer& at(Multiset4 m) const { return (*this)(m[0], m[1], m[2], m[3]); }
  // D_p D_q as a product of two pair monomials.
  const Integer& pair_product(const IndexPair& p, const IndexPair& q) const {
    return (*this)(p.first, p.second, q.first, q.second);
  }

 private:
  std::size_t index(Multiset4 m) const;

  std::size_t n_;
  std::vector<Integer> values_;  // n^4 slots, only sorted keys filled
};

// All pairs (i, j) with i <= j, lexicographic.
std::vector<IndexPair> degree_two_monomials(std::size_t n);

// Pair monomials spanning A^2(X)_Q numerically, with the expansion of every
// D_i D_j in them.
struct Codim2Basis {
  std::vector<IndexPair> monomials;
  std::vector<IndexPair> pairs;        // degree_two_monomials(n)
  RationalMatrix expansion;            // pairs.size() x monomials.size()
  IntegerMatrix pairing;               // monomials.size() x pairs.size()
  bool hint_used = false;

  std::size_t dimension() const { return monomials.size(); }
  std::size_t pair_index(const IndexPair& p) const;
};

Codim2Basis codim2_basis(const IntersectionTable& table,
                         std::span<const IndexPair> hint = {});

// The functional alpha -> D_i D_j . alpha in basis coordinates.
RationalVector pair_functional(const IntersectionTable& table, const Codim2Basis& basis,
                               const IndexPair& p);

// Gram matrix B_b . B_c of the basis monomials.
RationalMatrix basis_gram(const IntersectionTable& table, const Codim2Basis& basis);

// c_2(X) . alpha with c_2 = sum_{i<j} D_i D_j.
Rational c2_pairing(const IntersectionTable& table, const Codim2Basis& basis,
                    std::span<const Rational> alpha);

}  // namespace abeltoric
