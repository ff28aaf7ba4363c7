#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "abeltoric/fan.hpp"

namespace abeltoric {

// The rank-4 lattice {(<m,x_1>, ..., <m,x_n>) : m in M} of principal
// T-invariant divisors. Pic(X) = Z^n / rows.
struct RelationLattice {
  std::size_t n = 0;
  std::array<std::vector<Integer>, 4> rows;  // pairing vectors of e*_1..e*_4
};

// Coefficients (<m, x_1>, ..., <m, x_n>) of div(e(m)).
std::vector<Integer> pairing_vector(const Fan& fan, const std::array<Integer, 4>& m);
std::vector<Integer> pairing_vector(const Fan& fan, const DualVector& m);

RelationLattice relation_lattice(const Fan& fan);

// Relations from the dual basis of the chosen rays: +1 on the i-th chosen
// ray and 0 on the other three. Throws NotABasis.
std::array<std::vector<Integer>, 4> basis_relations(const Fan& fan,
                                                    const std::array<std::size_t, 4>& basis_rays);

// The character m with relation vector r, if r is principal.
std::optional<std::array<Integer, 4>> character_of(const Fan& fan, std::span<const Integer> relation);

bool in_relation_lattice(const Fan& fan, std::span<const Integer> relation);

// A divisor sum c_i D_i up to linear equivalence.
struct DivisorClass {
  std::vector<Integer> coeffs;
};

bool linearly_equivalent(const Fan& fan, const DivisorClass& a, const DivisorClass& b);

// Whether {D_i : i in subset} generates Pic(X).
bool classes_generate_pic(const Fan& fan, std::span<const std::size_t> subset);
bool classes_generate_pic(const Fan& fan, RayMask subset);

// "D1+D3-D5-D8" in 1-based labels; "0" for the zero vector.
std::string format_divisor(std::span<const Integer> coeffs);

}  // namespace abeltoric
