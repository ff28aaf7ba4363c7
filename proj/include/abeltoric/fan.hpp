#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "abeltoric/lattice.hpp"

namespace abeltoric {

// Subsets of ray indices. Fans carry at most 63 rays.
using RayMask = std::uint64_t;
inline constexpr std::size_t kMaxRays = 63;

inline RayMask bit(std::size_t i) { return RayMask{1} << i; }
RayMask mask_of(std::span<const std::size_t> indices);
std::vector<std::size_t> indices_of(RayMask mask);
inline int popcount(RayMask m) { return __builtin_popcountll(m); }

// Ray indices of a maximal cone, sorted ascending.
using Cone = std::array<std::size_t, 4>;

// A simplicial fan in N = Z^4 given by its rays and maximal cones. Immutable.
// Construction only checks structural well-formedness; geometric validity is
// reported by validate().
class Fan {
 public:
  Fan(std::string name, std::vector<LatticeVector> rays, std::vector<Cone> max_cones);

  const std::string& name() const { return name_; }
  std::size_t size() const { return rays_.size(); }
  const LatticeVector& ray(std::size_t i) const { return rays_[i]; }
  const std::vector<LatticeVector>& rays() const { return rays_; }
  const std::vector<Cone>& max_cones() const { return cones_; }
  RayMask cone_mask(std::size_t c) const { return cone_masks_[c]; }
  Basis4 cone_basis(std::size_t c) const;

  // True iff the rays in mask lie in a common maximal cone.
  bool contains_face(RayMask mask) const;
  // Index of the first maximal cone containing mask.
  std::optional<std::size_t> cone_containing(RayMask mask) const;

  Fan renamed(std::string name) const;

 private:
  std::string name_;
  std::vector<LatticeVector> rays_;
  std::vector<Cone> cones_;
  std::vector<RayMask> cone_masks_;
};

struct ValidationReport {
  bool rays_primitive = false;
  bool smooth = false;
  bool complete = false;
  std::vector<std::string> problems;

  bool ok() const { return rays_primitive && smooth && complete; }
};

ValidationReport validate(const Fan& fan);

bool cone_exists(const Fan& fan, std::span<const std::size_t> indices);

// Minimal non-face, sorted.
struct PrimitiveCollection {
  std::vector<std::size_t> indices;
  friend bool operator==(const PrimitiveCollection&, const PrimitiveCollection&) = default;
  friend auto operator<=>(const PrimitiveCollection&, const PrimitiveCollection&) = default;
};

// sum_{i in lhs} x_i = sum_j c_j x_j with c_j > 0 on a cone of the fan.
struct PrimitiveRelation {
  PrimitiveCollection lhs;
  std::vector<std::pair<std::size_t, Integer>> rhs;  // sorted by index
};

std::vector<PrimitiveCollection> primitive_collections(const Fan& fan);
PrimitiveRelation primitive_relation(const Fan& fan, const PrimitiveCollection& pc);

// A wall tau between maximal cones tau+{u} and tau+{w}, with the relation
// x_u + x_w = sum_t coeff_t x_t over t in tau.
struct Wall {
  std::array<std::size_t, 3> tau;
  std::size_t u, w;
  std::array<Integer, 3> coeffs;
};

// Requires a smooth fan in which every facet is shared by exactly two cones.
std::vector<Wall> walls(const Fan& fan);

// Coefficients a_i of an ample divisor sum a_i D_i, if the fan is projective.
// Decided by exact LP on the strict convexity inequalities across all walls.
std::optional<std::vector<Integer>> ample_divisor(const Fan& fan);

// Symbolic primitive relation sum_{lhs} x_i = sum c_j x_j.
struct SymbolicRelation {
  std::vector<std::size_t> lhs;
  std::vector<std::pair<std::size_t, Integer>> rhs;
};

struct PrimitivePresentation {
  std::size_t n = 0;
  std::array<std::size_t, 4> basis{};  // rays sent to e1..e4
  std::vector<SymbolicRelation> relations;
};

// Solves ray coordinates by back-substitution and takes as maximal cones all
// 4-subsets that contain no left-hand side.
Fan fan_from_primitive_data(const std::string& name, const PrimitivePresentation& presentation);

// Star subdivision at a 2-cone; the new ray x_i + x_j gets index size().
Fan star_subdivision(const Fan& fan, std::array<std::size_t, 2> cone2);

// x_first = -x_second, every maximal cone holds exactly one of them, both have
// the same link, and projection is an integral m with <m, x_first> = 1 that
// vanishes on every other ray, so the fan is P^1 times a 3-dimensional fan.
struct P1Factor {
  std::size_t first, second;
  std::array<Integer, 4> projection;
};

std::vector<P1Factor> p1_factors(const Fan& fan);
std::optional<P1Factor> detect_p1_factor(const Fan& fan);

// 1-based label x_{i+1}.
std::string ray_label(std::size_t i);

}  // namespace abeltoric
