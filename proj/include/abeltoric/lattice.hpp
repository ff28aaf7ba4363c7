#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>

#include "abeltoric/arith.hpp"

namespace abeltoric {

// An element of N = Z^4.
struct LatticeVector {
  std::array<Integer, 4> coords{};

  LatticeVector() = default;
  LatticeVector(long a, long b, long c, long d) : coords{a, b, c, d} {}
  explicit LatticeVector(std::array<Integer, 4> c) : coords(std::move(c)) {}

  const Integer& operator[](std::size_t i) const { return coords[i]; }
  Integer& operator[](std::size_t i) { return coords[i]; }

  bool is_zero() const;
  // gcd of the coordinates is 1.
  bool is_primitive() const;

  LatticeVector& operator+=(const LatticeVector& o);
  LatticeVector& operator-=(const LatticeVector& o);
  friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
  friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
  friend LatticeVector operator-(const LatticeVector& a);
  friend LatticeVector operator*(const Integer& k, const LatticeVector& v);
  friend bool operator==(const LatticeVector& a, const LatticeVector& b) { return a.coords == b.coords; }
  friend bool operator<(const LatticeVector& a, const LatticeVector& b) { return a.coords < b.coords; }

  std::string to_string() const;
};

// An element of M (x) Q. Integral when it represents a character m in M.
struct DualVector {
  std::array<Rational, 4> coords{};

  const Rational& operator[](std::size_t i) const { return coords[i]; }
  Rational& operator[](std::size_t i) { return coords[i]; }

  bool is_integral() const;
  // Requires is_integral().
  std::array<Integer, 4> to_integers() const;

  friend bool operator==(const DualVector& a, const DualVector& b) { return a.coords == b.coords; }
  std::string to_string() const;
};

using Basis4 = std::array<LatticeVector, 4>;

Rational pairing(const DualVector& m, const LatticeVector& v);

Integer det4(const LatticeVector& v1, const LatticeVector& v2, const LatticeVector& v3,
             const LatticeVector& v4);
Integer det4(const Basis4& vs);

bool is_unimodular_basis(const Basis4& vs);

// {x*_1..x*_4} with <x*_i, x_j> = delta_ij. Throws NotABasis unless |det| = 1.
std::array<DualVector, 4> dual_basis(const Basis4& vs);

// Coefficients c with v = sum c_i basis_i. Throws NotABasis unless |det| = 1.
std::array<Integer, 4> express_in_basis(const LatticeVector& v, const Basis4& basis);

// Rational coordinates of v in an arbitrary (nonsingular) basis.
// Throws NotABasis when det = 0.
std::array<Rational, 4> rational_coordinates(const LatticeVector& v, const Basis4& basis);

}  // namespace abeltoric
