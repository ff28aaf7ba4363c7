#include "abeltoric/picard.hpp"

#include "abeltoric/error.hpp"
#include "abeltoric/linalg.hpp"

namespace abeltoric {

std::vector<Integer> pairing_vector(const Fan& fan, const std::array<Integer, 4>& m) {
  std::vector<Integer> r(fan.size());
  for (std::size_t k = 0; k < fan.size(); ++k) {
    const auto& x = fan.ray(k);
    r[k] = m[0] * x[0] + m[1] * x[1] + m[2] * x[2] + m[3] * x[3];
  }
  return r;
}

std::vector<Integer> pairing_vector(const Fan& fan, const DualVector& m) {
  return pairing_vector(fan, m.to_integers());
}

RelationLattice relation_lattice(const Fan& fan) {
  RelationLattice lat;
  lat.n = fan.size();
  for (std::size_t i = 0; i < 4; ++i) {
    std::array<Integer, 4> e{0, 0, 0, 0};
    e[i] = 1;
    lat.rows[i] = pairing_vector(fan, e);
  }
  return lat;
}

std::array<std::vector<Integer>, 4> basis_relations(const Fan& fan,
                                                    const std::array<std::size_t, 4>& basis_rays) {
  Basis4 basis;
  for (std::size_t k = 0; k < 4; ++k) {
    if (basis_rays[k] >= fan.size()) throw Error(ErrorKind::NotABasis, "basis ray index out of range");
    basis[k] = fan.ray(basis_rays[k]);
  }
  auto duals = dual_basis(basis);
  std::array<std::vector<Integer>, 4> out;
  for (std::size_t k = 0; k < 4; ++k) out[k] = pairing_vector(fan, duals[k]);
  return out;
}

std::optional<std::array<Integer, 4>> character_of(const Fan& fan, std::span<const Integer> relation) {
  if (relation.size() != fan.size() || fan.max_cones().empty()) return std::nullopt;
  // m is pinned down by its values on any lattice basis of rays.
  const auto& cone = fan.max_cones()[0];
  auto duals = dual_basis(fan.cone_basis(0));
  std::array<Rational, 4> m{0, 0, 0, 0};
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t c = 0; c < 4; ++c) m[c] += Rational(relation[cone[k]]) * duals[k][c];
  }
  std::array<Integer, 4> mi;
  for (std::size_t c = 0; c < 4; ++c) {
    if (!is_integral(m[c])) return std::nullopt;
    mi[c] = Integer(m[c].get_num());
  }
  if (pairing_vector(fan, mi) != std::vector<Integer>(relation.begin(), relation.end())) return std::nullopt;
  return mi;
}

bool in_relation_lattice(const Fan& fan, std::span<const Integer> relation) {
  return character_of(fan, relation).has_value();
}

bool linearly_equivalent(const Fan& fan, const DivisorClass& a, const DivisorClass& b) {
  if (a.coeffs.size() != fan.size() || b.coeffs.size() != fan.size()) return false;
  std::vector<Integer> diff(fan.size());
  for (std::size_t i = 0; i < fan.size(); ++i) diff[i] = a.coeffs[i] - b.coeffs[i];
  return in_relation_lattice(fan, diff);
}

bool classes_generate_pic(const Fan& fan, RayMask subset) {
  // Z^S + R = Z^n iff the relation lattice projects onto the coordinates outside S.
  std::vector<std::size_t> outside;
  for (std::size_t k = 0; k < fan.size(); ++k) {
    if (!(subset & bit(k))) outside.push_back(k);
  }
  const std::size_t r = outside.size();
  if (r == 0) return true;
  if (r > 4) return false;
  auto lat = relation_lattice(fan);
  IntegerMatrix gens(4, std::vector<Integer>(r));
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t c = 0; c < r; ++c) gens[i][c] = lat.rows[i][outside[c]];
  }
  auto h = hermite_rows(std::move(gens), r);
  if (h.size() != r) return false;
  for (std::size_t i = 0; i < r; ++i) {
    if (h[i][i] != 1) return false;
  }
  return true;
}

bool classes_generate_pic(const Fan& fan, std::span<const std::size_t> subset) {
  for (auto i : subset) {
    if (i >= fan.size()) throw Error(ErrorKind::MalformedFan, "divisor index out of range");
  }
  return classes_generate_pic(fan, mask_of(subset));
}

std::string format_divisor(std::span<const Integer> coeffs) {
  std::string s;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const Integer& c = coeffs[i];
    if (c == 0) continue;
    if (c < 0) s += "-";
    else if (!s.empty()) s += "+";
    if (abs(c) != 1) s += Integer(abs(c)).get_str();
    s += "D" + std::to_string(i + 1);
  }
  return s.empty() ? "0" : s;
}

}  // namespace abeltoric
