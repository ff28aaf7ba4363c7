#include <algorithm>

#include "abeltoric/catalog.hpp"
#include "abeltoric/fan.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace abeltoric;
using testing_support::builtin;
using testing_support::error_kind_of;
using testing_support::x;

namespace {

std::vector<LatticeVector> p4_rays() {
  return {LatticeVector(1, 0, 0, 0), LatticeVector(0, 1, 0, 0), LatticeVector(0, 0, 1, 0),
          LatticeVector(0, 0, 0, 1), LatticeVector(-1, -1, -1, -1)};
}

std::vector<Cone> p4_cones() {
  return {{0, 1, 2, 3}, {0, 1, 2, 4}, {0, 1, 3, 4}, {0, 2, 3, 4}, {1, 2, 3, 4}};
}

Fan p4() { return Fan("P4", p4_rays(), p4_cones()); }

std::vector<std::vector<std::size_t>> collections_of(const Fan& f) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& pc : primitive_collections(f)) out.push_back(pc.indices);
  return out;
}

}  // namespace

TEST_CASE("validate P4 and broken variants") {
  auto rep = validate(p4());
  CHECK(rep.rays_primitive);
  CHECK(rep.smooth);
  CHECK(rep.complete);

  auto cones = p4_cones();
  cones.pop_back();
  auto holed = validate(Fan("holed", p4_rays(), cones));
  CHECK(holed.smooth);
  CHECK_FALSE(holed.complete);
  CHECK_FALSE(holed.ok());

  auto rays = p4_rays();
  rays[4] = LatticeVector(-1, -1, -1, -2);
  auto weighted = validate(Fan("weighted", rays, p4_cones()));
  CHECK_FALSE(weighted.smooth);
  CHECK(weighted.complete);

  auto fat = p4_rays();
  fat[4] = LatticeVector(-2, -2, -2, -2);
  CHECK_FALSE(validate(Fan("fat", fat, p4_cones())).rays_primitive);
}

TEST_CASE("malformed fans are rejected at construction") {
  auto rays = p4_rays();
  CHECK(error_kind_of([&] { Fan("bad", rays, {{0, 1, 2, 9}}); }) == ErrorKind::MalformedFan);
  CHECK(error_kind_of([&] { Fan("bad", rays, {{0, 1, 2, 2}}); }) == ErrorKind::MalformedFan);
  rays.push_back(rays[0]);
  CHECK(error_kind_of([&] { Fan("bad", rays, p4_cones()); }) == ErrorKind::MalformedFan);
}

TEST_CASE("cone existence") {
  const auto f = p4();
  CHECK(cone_exists(f, std::vector<std::size_t>{0, 1}));
  CHECK_FALSE(cone_exists(f, std::vector<std::size_t>{0, 1, 2, 3, 4}));
  CHECK_FALSE(cone_exists(builtin("L12"), std::vector<std::size_t>{0, 7}));
}

TEST_CASE("primitive collections of named fans") {
  CHECK(collections_of(p4()) == std::vector<std::vector<std::size_t>>{{0, 1, 2, 3, 4}});
  CHECK(collections_of(builtin("L12")) ==
        std::vector<std::vector<std::size_t>>{{0, 7}, {1, 2}, {3, 4}, {5, 6}});
  const std::vector<std::vector<std::size_t>> i_family{
      {x(1), x(2)}, {x(3), x(4), x(5)}, {x(3), x(6)}, {x(4), x(5), x(7)}, {x(6), x(8)}, {x(7), x(8)}};
  for (auto params : {std::vector<long>{1, 1, -1}, {0, 1, 0}, {0, 0, -1}, {1, 0, -1}}) {
    auto got = collections_of(build_family(Family::I, params));
    std::sort(got.begin(), got.end());
    auto want = i_family;
    std::sort(want.begin(), want.end());
    CHECK(got == want);
  }
}

TEST_CASE("primitive collections match brute force on every catalog fan") {
  for (const auto& e : builtin_catalog()) {
    CAPTURE(e.type_label);
    CHECK(collections_of(e.fan) == oracle::brute_force_primitive_collections(e.fan));
  }
}

TEST_CASE("primitive relations") {
  const auto l12 = builtin("L12");
  auto r23 = primitive_relation(l12, PrimitiveCollection{{x(2), x(3)}});
  REQUIRE(r23.rhs.size() == 1);
  CHECK(r23.rhs[0].first == x(1));
  CHECK(r23.rhs[0].second == 1);
  CHECK(primitive_relation(l12, PrimitiveCollection{{x(1), x(8)}}).rhs.empty());

  const auto bl = builtin("BlP4pt");
  auto r = primitive_relation(bl, PrimitiveCollection{{0, 1, 2, 3}});
  REQUIRE(r.rhs.size() == 1);
  CHECK(r.rhs[0].first == 5);
  CHECK(r.rhs[0].second == 1);
}

TEST_CASE("primitive relations hold as vector identities on every catalog fan") {
  for (const auto& e : builtin_catalog()) {
    CAPTURE(e.type_label);
    for (const auto& pc : primitive_collections(e.fan)) {
      auto rel = primitive_relation(e.fan, pc);
      LatticeVector lhs(0, 0, 0, 0), rhs(0, 0, 0, 0);
      for (auto i : pc.indices) lhs += e.fan.ray(i);
      RayMask support = 0;
      for (const auto& [j, c] : rel.rhs) {
        CHECK(c > 0);
        rhs += c * e.fan.ray(j);
        support |= bit(j);
      }
      CHECK(lhs == rhs);
      CHECK(e.fan.contains_face(support));
    }
  }
}

TEST_CASE("walls carry their linear relation") {
  for (const auto& e : builtin_catalog()) {
    CAPTURE(e.type_label);
    auto ws = walls(e.fan);
    CHECK(ws.size() == e.fan.max_cones().size() * 2);
    for (const auto& w : ws) {
      LatticeVector rhs(0, 0, 0, 0);
      for (int k = 0; k < 3; ++k) rhs += w.coeffs[k] * e.fan.ray(w.tau[k]);
      CHECK(e.fan.ray(w.u) + e.fan.ray(w.w) == rhs);
    }
  }
}

TEST_CASE("ample divisors satisfy strict convexity on every wall") {
  for (const auto& e : builtin_catalog()) {
    CAPTURE(e.type_label);
    auto a = ample_divisor(e.fan);
    REQUIRE(a.has_value());
    for (const auto& w : walls(e.fan)) {
      Integer lhs = (*a)[w.u] + (*a)[w.w];
      for (int k = 0; k < 3; ++k) lhs -= w.coeffs[k] * (*a)[w.tau[k]];
      CHECK(lhs >= 1);
    }
  }
}

TEST_CASE("fan from primitive data: L12") {
  auto f = fan_from_primitive_data("L12", l12_presentation());
  REQUIRE(f.size() == 8);
  CHECK(f.max_cones().size() == 16);
  const auto& r = f.rays();
  CHECK(r[x(8)] == -r[x(1)]);
  CHECK(r[x(3)] == r[x(1)] - r[x(2)]);
  CHECK(r[x(5)] == -r[x(1)] - r[x(4)]);
  CHECK(r[x(7)] == r[x(4)] - r[x(6)]);
  CHECK(is_unimodular_basis({r[x(1)], r[x(2)], r[x(4)], r[x(6)]}));
}

TEST_CASE("fan from primitive data: G1 with a = 1") {
  auto f = fan_from_primitive_data("G1", g1_presentation(1));
  const auto& r = f.rays();
  CHECK(r[x(7)] == -r[x(1)]);
  CHECK(r[x(3)] == r[x(1)] - r[x(2)] - r[x(4)]);
  CHECK(r[x(6)] == Integer(2) * r[x(1)] - r[x(4)] - r[x(5)]);
}

TEST_CASE("fan from primitive data: error paths") {
  auto p = l12_presentation();
  p.relations.pop_back();
  CHECK(error_kind_of([&] { fan_from_primitive_data("bad", p); }) == ErrorKind::UnderdeterminedRays);

  auto q = l12_presentation();
  q.relations.push_back(SymbolicRelation{{x(1), x(2)}, {}});
  auto k = error_kind_of([&] { fan_from_primitive_data("bad", q); });
  CHECK((k == ErrorKind::InconsistentRelations || k == ErrorKind::ValidationFailed ||
         k == ErrorKind::CollectionMismatch));

  auto r = l12_presentation();
  r.basis = {0, 0, 1, 2};
  CHECK(error_kind_of([&] { fan_from_primitive_data("bad", r); }) == ErrorKind::MalformedFan);
}

TEST_CASE("star subdivision") {
  auto s = star_subdivision(p4(), {0, 1});
  CHECK(s.size() == 6);
  CHECK(s.ray(5) == LatticeVector(1, 1, 0, 0));
  CHECK(s.max_cones().size() == 8);
  CHECK(validate(s).ok());
  CHECK(error_kind_of([] { star_subdivision(builtin("L12"), {0, 7}); }) == ErrorKind::NotACone);
}

TEST_CASE("star subdivisions of catalog fans stay smooth and complete") {
  for (const auto& e : builtin_catalog()) {
    CAPTURE(e.type_label);
    for (std::size_t i = 0; i < e.fan.size(); ++i)
      for (std::size_t j = i + 1; j < e.fan.size(); ++j) {
        if (!e.fan.contains_face(bit(i) | bit(j))) continue;
        auto s = star_subdivision(e.fan, {i, j});
        CHECK(validate(s).ok());
        CHECK(ample_divisor(s).has_value());
      }
  }
}

TEST_CASE("P1 factor detection") {
  auto l5 = detect_p1_factor(builtin("L5"));
  REQUIRE(l5.has_value());
  CHECK(l5->first == x(1));
  CHECK(l5->second == x(8));

  CHECK_FALSE(detect_p1_factor(p4()).has_value());

  auto fa = detect_p1_factor(build_fa_bundle(0, 0, 1));
  REQUIRE(fa.has_value());
  CHECK(fa->first == x(4));
  CHECK(fa->second == x(5));

  auto product = build_fa_bundle(0, 0, 0);
  CHECK(collections_of(product) ==
        std::vector<std::vector<std::size_t>>{{x(1), x(2), x(3)}, {x(4), x(5)}, {x(6), x(7)}});
  CHECK(p1_factors(product).size() == 2);
}

TEST_CASE("ray labels are 1-based") {
  CHECK(ray_label(0) == "x1");
  CHECK(ray_label(7) == "x8");
}
