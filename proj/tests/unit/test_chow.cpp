#include <random>

#include "abeltoric/catalog.hpp"
#include "abeltoric/chow.hpp"
#include "abeltoric/lattice.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace abeltoric;
using testing_support::builtin;
using testing_support::error_kind_of;
using testing_support::x;

TEST_CASE("L12 intersection numbers") {
  const auto f = builtin("L12");
  CHECK(intersection_number(f, {x(3), x(5), x(5), x(8)}) == 1);
  CHECK(intersection_number(f, {x(3), x(5), x(5), x(7)}) == 0);
  CHECK(intersection_number(f, {x(5), x(5), x(7), x(8)}) == 0);
  CHECK(intersection_number(f, {x(3), x(5), x(7), x(8)}) == 1);
  // Argument order does not matter.
  CHECK(intersection_number(f, {x(8), x(5), x(3), x(5)}) == 1);
}

TEST_CASE("degree of P4") {
  const auto f = builtin("P4");
  for (std::size_t i = 0; i < 5; ++i) CHECK(intersection_number(f, {i, i, i, i}) == 1);
}

TEST_CASE("distinct indices: 1 on cones, 0 otherwise") {
  for (const auto& e : builtin_catalog()) {
    CAPTURE(e.type_label);
    const IntersectionTable t(e.fan);
    const std::size_t n = e.fan.size();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        for (std::size_t c = b + 1; c < n; ++c)
          for (std::size_t d = c + 1; d < n; ++d) {
            const bool cone = e.fan.contains_face(bit(a) | bit(b) | bit(c) | bit(d));
            CHECK(t(a, b, c, d) == (cone ? 1 : 0));
          }
  }
}

TEST_CASE("products of projective spaces match the multinomial oracle") {
  for (const auto& dims : std::vector<std::vector<int>>{{4}, {3, 1}, {1, 3}, {2, 2}, {2, 1, 1}, {1, 1, 1, 1}}) {
    auto space = oracle::product_of_projective_spaces(dims);
    auto fan = oracle::to_fan(space, "product");
    REQUIRE(validate(fan).ok());
    const IntersectionTable t(fan);
    for (const auto& m : oracle::all_multisets(fan.size())) {
      CAPTURE(m[0]);
      CAPTURE(m[1]);
      CAPTURE(m[2]);
      CAPTURE(m[3]);
      CHECK(t.at(m) == oracle::multinomial_degree(space, m));
    }
  }
}

TEST_CASE("linear equivalence annihilates the table") {
  for (const auto& e : builtin_catalog()) {
    CAPTURE(e.type_label);
    const IntersectionTable t(e.fan);
    const std::size_t n = e.fan.size();
    for (int k = 0; k < 4; ++k)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = j; l < n; ++l)
          for (std::size_t m = l; m < n; ++m) {
            Integer s = 0;
            for (std::size_t i = 0; i < n; ++i) s += e.fan.ray(i)[k] * t(i, j, l, m);
            CHECK(s == 0);
          }
  }
}

TEST_CASE("reduction order does not change intersection numbers") {
  std::mt19937 rng(99);
  ReductionChooser random_choice = [&](std::size_t count) {
    return std::uniform_int_distribution<std::size_t>(0, count - 1)(rng);
  };
  for (const auto& e : builtin_catalog()) {
    CAPTURE(e.type_label);
    const IntersectionTable t(e.fan);
    for (const auto& m : oracle::all_multisets(e.fan.size())) {
      if (m[0] != m[1] && m[1] != m[2] && m[2] != m[3]) continue;
      CHECK(intersection_number(e.fan, m, random_choice) == t.at(m));
    }
  }
}

TEST_CASE("out-of-range divisor index") {
  CHECK(error_kind_of([] { intersection_number(builtin("P4"), {0, 1, 2, 9}); }) == ErrorKind::MalformedFan);
}

TEST_CASE("codim-2 bases") {
  const IntersectionTable p4(builtin("P4"));
  CHECK(codim2_basis(p4).dimension() == 1);

  auto p2p2 = oracle::to_fan(oracle::product_of_projective_spaces({2, 2}), "P2xP2");
  const IntersectionTable t(p2p2);
  CHECK(codim2_basis(t).dimension() == 3);

  const IntersectionTable l12(builtin("L12"));
  const std::vector<IndexPair> hint{{x(3), x(5)}, {x(3), x(7)}, {x(3), x(8)},
                                    {x(5), x(7)}, {x(5), x(8)}, {x(7), x(8)}};
  auto b = codim2_basis(l12, hint);
  CHECK(b.hint_used);
  CHECK(b.monomials == hint);

  const std::vector<IndexPair> dependent{{x(2), x(2)}, {x(3), x(3)}};  // both zero classes
  CHECK_FALSE(codim2_basis(l12, dependent).hint_used);
}

TEST_CASE("basis expansions reproduce every pair product") {
  for (const auto& e : builtin_catalog()) {
    CAPTURE(e.type_label);
    const IntersectionTable t(e.fan);
    auto b = codim2_basis(t);
    for (std::size_t p = 0; p < b.pairs.size(); ++p)
      for (std::size_t q = 0; q < b.pairs.size(); ++q) {
        Rational s = 0;
        for (std::size_t k = 0; k < b.dimension(); ++k)
          s += b.expansion[p][k] * t.pair_product(b.monomials[k], b.pairs[q]);
        CHECK(s == t.pair_product(b.pairs[p], b.pairs[q]));
      }
  }
}

TEST_CASE("second Chern class pairing") {
  const IntersectionTable p4(builtin("P4"));
  auto b = codim2_basis(p4);
  CHECK(c2_pairing(p4, b, std::vector<Rational>{1}) == 10);
  CHECK(c2_pairing(p4, b, std::vector<Rational>{0}) == 0);

  const IntersectionTable l12(builtin("L12"));
  const std::vector<IndexPair> hint{{x(3), x(5)}, {x(3), x(7)}, {x(3), x(8)},
                                    {x(5), x(7)}, {x(5), x(8)}, {x(7), x(8)}};
  auto lb = codim2_basis(l12, hint);
  std::vector<Rational> alpha(6, 0);
  alpha[0] = 1;
  Integer brute = 0;
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = i + 1; j < 8; ++j) brute += l12(i, j, x(3), x(5));
  CHECK(c2_pairing(l12, lb, alpha) == Rational(brute));
}

TEST_CASE("pair functionals and Gram matrix agree with the table") {
  const IntersectionTable l12(builtin("L12"));
  auto b = codim2_basis(l12);
  auto g = basis_gram(l12, b);
  for (std::size_t i = 0; i < b.dimension(); ++i) {
    auto f = pair_functional(l12, b, b.monomials[i]);
    for (std::size_t j = 0; j < b.dimension(); ++j) {
      CHECK(f[j] == g[i][j]);
      CHECK(g[i][j] == g[j][i]);
    }
  }
}
