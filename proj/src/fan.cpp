#include "abeltoric/fan.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "abeltoric/error.hpp"
#include "abeltoric/lp.hpp"

namespace abeltoric {

RayMask mask_of(std::span<const std::size_t> indices) {
  RayMask m = 0;
  for (auto i : indices) m |= bit(i);
  return m;
}

std::vector<std::size_t> indices_of(RayMask mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; mask; ++i, mask >>= 1) {
    if (mask & 1) out.push_back(i);
  }
  return out;
}

std::string ray_label(std::size_t i) { return "x" + std::to_string(i + 1); }

namespace {

template <typename F>
void for_each_subset_of_size(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  if (k == 0) {
    f(RayMask{0});
    return;
  }
  RayMask m = (RayMask{1} << k) - 1;
  const RayMask limit = RayMask{1} << n;
  while (m < limit) {
    f(m);
    RayMask c = m & (~m + 1);
    RayMask r = m + c;
    m = (((r ^ m) >> 2) / c) | r;
  }
}

Cone sorted_cone(Cone c) {
  std::sort(c.begin(), c.end());
  return c;
}

}  // namespace

Fan::Fan(std::string name, std::vector<LatticeVector> rays, std::vector<Cone> max_cones)
    : name_(std::move(name)), rays_(std::move(rays)) {
  const std::size_t n = rays_.size();
  if (n > kMaxRays) {
    throw Error(ErrorKind::MalformedFan, "at most " + std::to_string(kMaxRays) + " rays supported");
  }
  {
    std::set<LatticeVector> seen;
    for (std::size_t i = 0; i < n; ++i) {
      if (!seen.insert(rays_[i]).second) {
        throw Error(ErrorKind::MalformedFan, "duplicate ray " + rays_[i].to_string());
      }
    }
  }
  std::set<RayMask> seen_cones;
  cones_.reserve(max_cones.size());
  for (auto c : max_cones) {
    for (auto i : c) {
      if (i >= n) {
        throw Error(ErrorKind::MalformedFan,
                    "cone index " + std::to_string(i) + " out of range for " + std::to_string(n) + " rays");
      }
    }
    c = sorted_cone(c);
    if (std::adjacent_find(c.begin(), c.end()) != c.end()) {
      throw Error(ErrorKind::MalformedFan, "cone with repeated ray index");
    }
    RayMask m = mask_of(c);
    if (!seen_cones.insert(m).second) throw Error(ErrorKind::MalformedFan, "duplicate maximal cone");
    cones_.push_back(c);
    cone_masks_.push_back(m);
  }
}

Basis4 Fan::cone_basis(std::size_t c) const {
  const auto& cone = cones_[c];
  return Basis4{rays_[cone[0]], rays_[cone[1]], rays_[cone[2]], rays_[cone[3]]};
}

bool Fan::contains_face(RayMask mask) const { return cone_containing(mask).has_value(); }

std::optional<std::size_t> Fan::cone_containing(RayMask mask) const {
  for (std::size_t c = 0; c < cone_masks_.size(); ++c) {
    if ((cone_masks_[c] & mask) == mask) return c;
  }
  return std::nullopt;
}

Fan Fan::renamed(std::string name) const {
  Fan f = *this;
  f.name_ = std::move(name);
  return f;
}

ValidationReport validate(const Fan& fan) {
  ValidationReport rep;
  const std::size_t n = fan.size();
  const auto& cones = fan.max_cones();

  rep.rays_primitive = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (!fan.ray(i).is_primitive()) {
      rep.rays_primitive = false;
      rep.problems.push_back("ray " + ray_label(i) + " = " + fan.ray(i).to_string() + " is not primitive");
    }
  }

  rep.smooth = !cones.empty();
  bool degenerate = false;
  for (std::size_t c = 0; c < cones.size(); ++c) {
    Integer d = det4(fan.cone_basis(c));
    if (abs(d) != 1) {
      rep.smooth = false;
      rep.problems.push_back("cone " + std::to_string(c) + " has determinant " + d.get_str());
    }
    if (d == 0) degenerate = true;
  }

  bool complete = !cones.empty() && !degenerate;
  if (cones.empty()) rep.problems.push_back("fan has no maximal cones");

  RayMask used = 0;
  for (std::size_t c = 0; c < cones.size(); ++c) used |= fan.cone_mask(c);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(used & bit(i))) {
      complete = false;
      rep.problems.push_back("ray " + ray_label(i) + " lies in no maximal cone");
    }
  }

  // Facets: each must border exactly two cones, from opposite sides.
  std::map<RayMask, std::vector<std::size_t>> facets;
  for (std::size_t c = 0; c < cones.size(); ++c) {
    for (auto i : cones[c]) facets[fan.cone_mask(c) & ~bit(i)].push_back(c);
  }
  std::vector<std::size_t> parent(cones.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [facet, owners] : facets) {
    if (owners.size() != 2) {
      complete = false;
      auto idx = indices_of(facet);
      std::string lab;
      for (auto i : idx) lab += (lab.empty() ? "" : ",") + ray_label(i);
      rep.problems.push_back("facet {" + lab + "} borders " + std::to_string(owners.size()) +
                             " maximal cone(s)");
      continue;
    }
    parent[find(owners[0])] = find(owners[1]);
    if (degenerate) continue;
    const std::size_t u = indices_of(fan.cone_mask(owners[0]) & ~facet)[0];
    const std::size_t w = indices_of(fan.cone_mask(owners[1]) & ~facet)[0];
    const auto& cone0 = cones[owners[0]];
    auto coords = rational_coordinates(fan.ray(w), fan.cone_basis(owners[0]));
    const auto pos = static_cast<std::size_t>(std::find(cone0.begin(), cone0.end(), u) - cone0.begin());
    if (coords[pos] >= 0) {
      complete = false;
      rep.problems.push_back("cones " + std::to_string(owners[0]) + " and " + std::to_string(owners[1]) +
                             " lie on the same side of their common facet");
    }
  }
  for (std::size_t c = 1; c < cones.size(); ++c) {
    if (find(c) != find(0)) {
      complete = false;
      rep.problems.push_back("maximal cones do not form a connected adjacency graph");
      break;
    }
  }

  // A generic point must lie in the interior of exactly one maximal cone.
  if (complete) {
    bool decided = false;
    const std::size_t tries = 16 * cones.size() + 16;
    for (long t = 2; !decided && static_cast<std::size_t>(t) < tries + 2; ++t) {
      LatticeVector p(1, t, t * t, t * t * t);
      std::size_t inside = 0;
      bool generic = true;
      for (std::size_t c = 0; c < cones.size() && generic; ++c) {
        auto coords = rational_coordinates(p, fan.cone_basis(c));
        bool all_pos = true;
        for (const auto& x : coords) {
          if (x == 0) generic = false;
          if (x <= 0) all_pos = false;
        }
        if (all_pos) ++inside;
      }
      if (!generic) continue;
      decided = true;
      if (inside != 1) {
        complete = false;
        rep.problems.push_back("a generic point is covered by " + std::to_string(inside) + " maximal cones");
      }
    }
    if (!decided) {
      complete = false;
      rep.problems.push_back("could not find a generic test point");
    }
  }
  rep.complete = complete;
  return rep;
}

bool cone_exists(const Fan& fan, std::span<const std::size_t> indices) {
  for (auto i : indices) {
    if (i >= fan.size()) return false;
  }
  if (indices.size() > 4) return false;
  return fan.contains_face(mask_of(indices));
}

std::vector<PrimitiveCollection> primitive_collections(const Fan& fan) {
  const std::size_t n = fan.size();
  std::vector<PrimitiveCollection> out;
  for (std::size_t k = 2; k <= std::min<std::size_t>(5, n); ++k) {
    for_each_subset_of_size(n, k, [&](RayMask m) {
      if (k <= 4 && fan.contains_face(m)) return;
      for (RayMask rest = m; rest; rest &= rest - 1) {
        RayMask low = rest & (~rest + 1);
        if (!fan.contains_face(m & ~low)) return;
      }
      out.push_back(PrimitiveCollection{indices_of(m)});
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

PrimitiveRelation primitive_relation(const Fan& fan, const PrimitiveCollection& pc) {
  LatticeVector sum;
  for (auto i : pc.indices) {
    if (i >= fan.size()) throw Error(ErrorKind::MalformedFan, "primitive collection index out of range");
    sum += fan.ray(i);
  }
  PrimitiveRelation rel{pc, {}};
  if (sum.is_zero()) return rel;
  for (std::size_t c = 0; c < fan.max_cones().size(); ++c) {
    auto coords = rational_coordinates(sum, fan.cone_basis(c));
    if (std::any_of(coords.begin(), coords.end(), [](const Rational& x) { return x < 0; })) continue;
    const auto& cone = fan.max_cones()[c];
    for (std::size_t k = 0; k < 4; ++k) {
      if (coords[k] == 0) continue;
      if (!is_integral(coords[k])) {
        throw Error(ErrorKind::InvalidFan, "non-integral primitive relation; fan is not smooth");
      }
      rel.rhs.emplace_back(cone[k], Integer(coords[k].get_num()));
    }
    std::sort(rel.rhs.begin(), rel.rhs.end());
    return rel;
  }
  throw Error(ErrorKind::NoContainingCone, "no maximal cone contains the sum of the collection");
}

std::vector<Wall> walls(const Fan& fan) {
  std::map<RayMask, std::vector<std::size_t>> facets;
  for (std::size_t c = 0; c < fan.max_cones().size(); ++c) {
    for (auto i : fan.max_cones()[c]) facets[fan.cone_mask(c) & ~bit(i)].push_back(c);
  }
  std::vector<Wall> out;
  out.reserve(facets.size());
  for (const auto& [facet, owners] : facets) {
    if (owners.size() != 2) throw Error(ErrorKind::InvalidFan, "fan is not complete");
    Wall wall;
    auto tau = indices_of(facet);
    std::copy(tau.begin(), tau.end(), wall.tau.begin());
    wall.u = indices_of(fan.cone_mask(owners[0]) & ~facet)[0];
    wall.w = indices_of(fan.cone_mask(owners[1]) & ~facet)[0];
    Basis4 basis{fan.ray(tau[0]), fan.ray(tau[1]), fan.ray(tau[2]), fan.ray(wall.u)};
    auto c = express_in_basis(fan.ray(wall.w), basis);
    if (c[3] != -1) throw Error(ErrorKind::InvalidFan, "adjacent cones do not meet in a smooth wall");
    for (std::size_t k = 0; k < 3; ++k) wall.coeffs[k] = c[k];
    out.push_back(std::move(wall));
  }
  return out;
}

std::optional<std::vector<Integer>> ample_divisor(const Fan& fan) {
  const std::size_t n = fan.size();
  lp::Problem problem(n);
  for (const auto& wall : walls(fan)) {
    RationalVector row(n, Rational(0));
    row[wall.u] += 1;
    row[wall.w] += 1;
    for (std::size_t k = 0; k < 3; ++k) row[wall.tau[k]] -= wall.coeffs[k];
    problem.add(std::move(row), lp::Relation::GreaterEqual, 1);
  }
  auto sol = lp::solve(problem);
  if (sol.status == lp::Status::Infeasible) return std::nullopt;
  Integer den = 1;
  for (const auto& q : sol.point) den = lcm(den, Integer(q.get_den()));
  std::vector<Integer> out;
  out.reserve(n);
  for (const auto& q : sol.point) out.push_back(Integer(q.get_num()) * (den / Integer(q.get_den())));
  return out;
}

Fan fan_from_primitive_data(const std::string& name, const PrimitivePresentation& p) {
  const std::size_t n = p.n;
  if (n < 5 || n > kMaxRays) throw Error(ErrorKind::MalformedFan, "presentation needs 5..63 rays");
  std::vector<std::optional<LatticeVector>> rays(n);
  for (std::size_t k = 0; k < 4; ++k) {
    if (p.basis[k] >= n) throw Error(ErrorKind::MalformedFan, "basis index out of range");
    if (rays[p.basis[k]]) throw Error(ErrorKind::MalformedFan, "repeated basis index");
    LatticeVector e;
    e[k] = 1;
    rays[p.basis[k]] = e;
  }
  for (const auto& rel : p.relations) {
    if (rel.lhs.size() < 2) throw Error(ErrorKind::MalformedFan, "relation with fewer than two summands");
    for (auto i : rel.lhs) {
      if (i >= n) throw Error(ErrorKind::MalformedFan, "relation index out of range");
    }
    for (const auto& [j, c] : rel.rhs) {
      if (j >= n) throw Error(ErrorKind::MalformedFan, "relation index out of range");
      if (c <= 0) throw Error(ErrorKind::MalformedFan, "relation coefficients must be positive");
      if (std::find(rel.lhs.begin(), rel.lhs.end(), j) != rel.lhs.end()) {
        throw Error(ErrorKind::MalformedFan, "ray on both sides of a relation");
      }
    }
  }

  for (std::size_t round = 0; round < n; ++round) {
    bool progress = false;
    for (const auto& rel : p.relations) {
      std::vector<std::size_t> unknown;
      for (auto i : rel.lhs) {
        if (!rays[i]) unknown.push_back(i);
      }
      for (const auto& [j, c] : rel.rhs) {
        if (!rays[j]) unknown.push_back(j);
      }
      if (unknown.size() != 1) continue;
      const std::size_t u = unknown[0];
      // lhs - rhs over the known rays; the unknown enters with coefficient +1 or -c.
      LatticeVector rest;
      Integer coeff = 0;
      for (auto i : rel.lhs) {
        if (i == u) coeff += 1;
        else rest += *rays[i];
      }
      for (const auto& [j, c] : rel.rhs) {
        if (j == u) coeff -= c;
        else rest -= c * *rays[j];
      }
      // coeff * x_u + rest = 0
      LatticeVector x;
      for (std::size_t k = 0; k < 4; ++k) {
        Integer num = -rest[k];
        if (num % coeff != 0) {
          throw Error(ErrorKind::InconsistentRelations,
                      "relations force a non-integral coordinate for " + ray_label(u));
        }
        x[k] = num / coeff;
      }
      rays[u] = x;
      progress = true;
    }
    if (!progress) break;
  }
  std::vector<LatticeVector> solved;
  solved.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rays[i]) {
      throw Error(ErrorKind::UnderdeterminedRays, "relations do not determine " + ray_label(i));
    }
    solved.push_back(*rays[i]);
  }
  for (const auto& rel : p.relations) {
    LatticeVector diff;
    for (auto i : rel.lhs) diff += solved[i];
    for (const auto& [j, c] : rel.rhs) diff -= c * solved[j];
    if (!diff.is_zero()) {
      throw Error(ErrorKind::InconsistentRelations, "solved rays violate a relation");
    }
  }

  std::vector<RayMask> lhs_masks;
  for (const auto& rel : p.relations) lhs_masks.push_back(mask_of(rel.lhs));
  std::vector<Cone> cones;
  for_each_subset_of_size(n, 4, [&](RayMask m) {
    for (auto l : lhs_masks) {
      if ((m & l) == l) return;
    }
    auto idx = indices_of(m);
    cones.push_back(Cone{idx[0], idx[1], idx[2], idx[3]});
  });
  std::sort(cones.begin(), cones.end());

  std::optional<Fan> fan;
  try {
    fan.emplace(name, std::move(solved), std::move(cones));
  } catch (const Error& e) {
    throw Error(ErrorKind::ValidationFailed, std::string("reconstruction is malformed: ") + e.what());
  }
  auto rep = validate(*fan);
  if (!rep.ok()) {
    std::string msg = "reconstructed fan is not smooth and complete";
    if (!rep.problems.empty()) msg += ": " + rep.problems.front();
    throw Error(ErrorKind::ValidationFailed, msg);
  }
  std::vector<PrimitiveCollection> given;
  for (const auto& rel : p.relations) {
    auto idx = rel.lhs;
    std::sort(idx.begin(), idx.end());
    given.push_back(PrimitiveCollection{idx});
  }
  std::sort(given.begin(), given.end());
  given.erase(std::unique(given.begin(), given.end()), given.end());
  if (primitive_collections(*fan) != given) {
    throw Error(ErrorKind::CollectionMismatch,
                "minimal non-faces of the reconstruction differ from the given collections");
  }
  return std::move(*fan);
}

Fan star_subdivision(const Fan& fan, std::array<std::size_t, 2> cone2) {
  const auto [i, j] = cone2;
  if (i == j || i >= fan.size() || j >= fan.size() || !fan.contains_face(bit(i) | bit(j))) {
    throw Error(ErrorKind::NotACone, "{" + ray_label(std::min(i, j)) + "," + ray_label(std::max(i, j)) +
                                         "} is not a cone of the fan");
  }
  auto rays = fan.rays();
  const std::size_t fresh = rays.size();
  rays.push_back(fan.ray(i) + fan.ray(j));
  std::vector<Cone> cones;
  for (std::size_t c = 0; c < fan.max_cones().size(); ++c) {
    const Cone& cone = fan.max_cones()[c];
    const RayMask m = fan.cone_mask(c);
    if ((m & bit(i)) && (m & bit(j))) {
      for (auto drop : {i, j}) {
        Cone nc = cone;
        *std::find(nc.begin(), nc.end(), drop) = fresh;
        cones.push_back(sorted_cone(nc));
      }
    } else {
      cones.push_back(cone);
    }
  }
  return Fan(fan.name() + "/" + ray_label(std::min(i, j)) + ray_label(std::max(i, j)), std::move(rays),
             std::move(cones));
}

std::vector<P1Factor> p1_factors(const Fan& fan) {
  std::vector<P1Factor> out;
  const std::size_t n = fan.size();
  const std::size_t nc = fan.max_cones().size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!(fan.ray(i) == -fan.ray(j))) continue;
      std::vector<RayMask> link_i, link_j;
      bool split = true;
      for (std::size_t c = 0; c < nc && split; ++c) {
        const RayMask m = fan.cone_mask(c);
        const bool hi = m & bit(i), hj = m & bit(j);
        if (hi == hj) split = false;
        else if (hi) link_i.push_back(m & ~bit(i));
        else link_j.push_back(m & ~bit(j));
      }
      if (!split) continue;
      std::sort(link_i.begin(), link_i.end());
      std::sort(link_j.begin(), link_j.end());
      if (link_i != link_j) continue;
      const auto owner = fan.cone_containing(bit(i));
      if (!owner) continue;
      const std::size_t c = *owner;
      const auto& cone = fan.max_cones()[c];
      const auto pos = static_cast<std::size_t>(std::find(cone.begin(), cone.end(), i) - cone.begin());
      const DualVector m = dual_basis(fan.cone_basis(c))[pos];
      bool product = true;
      for (std::size_t k = 0; k < n && product; ++k) {
        if (k != i && k != j && pairing(m, fan.ray(k)) != 0) product = false;
      }
      if (product) out.push_back(P1Factor{i, j, m.to_integers()});
    }
  }
  return out;
}

std::optional<P1Factor> detect_p1_factor(const Fan& fan) {
  auto all = p1_factors(fan);
  if (all.empty()) return std::nullopt;
  return all.front();
}

}  // namespace abeltoric
