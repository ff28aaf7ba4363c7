#include <random>

#include "abeltoric/lattice.hpp"
#include "abeltoric/linalg.hpp"
#include "abeltoric/lp.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace abeltoric;
using testing_support::error_kind_of;

namespace {

LatticeVector random_vector(std::mt19937& rng, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  return LatticeVector(d(rng), d(rng), d(rng), d(rng));
}

std::array<std::array<Integer, 4>, 4> rows_of(const Basis4& b) {
  std::array<std::array<Integer, 4>, 4> m;
  for (int i = 0; i < 4; ++i) m[i] = b[i].coords;
  return m;
}

const LatticeVector e1(1, 0, 0, 0), e2(0, 1, 0, 0), e3(0, 0, 1, 0), e4(0, 0, 0, 1);

}  // namespace

TEST_CASE("det4 on small examples") {
  CHECK(det4(e1, e2, e3, e4) == 1);
  CHECK(det4(e1, e2, e3, e3) == 0);
  CHECK(det4(e1, e2, e3, e1 + e2 + e3 + e4) == 1);
}

TEST_CASE("det4 agrees with Leibniz expansion and is alternating") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    Basis4 b{random_vector(rng, 5), random_vector(rng, 5), random_vector(rng, 5), random_vector(rng, 5)};
    const Integer d = det4(b);
    CHECK(d == oracle::leibniz_det(rows_of(b)));
    Basis4 swapped = b;
    std::swap(swapped[0], swapped[2]);
    CHECK(det4(swapped) == -d);
  }
}

TEST_CASE("unimodular basis test") {
  CHECK(is_unimodular_basis({e1, e2, e3, e4}));
  CHECK_FALSE(is_unimodular_basis({e1, e2, e3, LatticeVector(0, 0, 0, 2)}));
  CHECK(is_unimodular_basis({e1, e2, e3, LatticeVector(-1, -1, -1, -1)}));
}

TEST_CASE("dual basis") {
  auto d = dual_basis({e1, e2, e3, e4});
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(d[i][j] == (i == j ? 1 : 0));

  auto f = dual_basis({e1, e1 + e2, e3, e4});
  CHECK(f[0][0] == 1);
  CHECK(f[0][1] == -1);
  CHECK(f[0][2] == 0);
  CHECK(f[0][3] == 0);

  CHECK(error_kind_of([] { dual_basis({e1, e2, e3, LatticeVector(0, 0, 0, 2)}); }) == ErrorKind::NotABasis);
}

TEST_CASE("dual basis pairs to the identity on random unimodular bases") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> pick(0, 3), mult(-2, 2);
  for (int trial = 0; trial < 100; ++trial) {
    // Random products of elementary row operations starting from the identity.
    Basis4 b{e1, e2, e3, e4};
    for (int op = 0; op < 8; ++op) {
      const int i = pick(rng), j = pick(rng);
      if (i == j) continue;
      b[i] += Integer(mult(rng)) * b[j];
    }
    if (trial % 2) {
      const int k = pick(rng);
      b[k] = -b[k];
    }
    CHECK(is_unimodular_basis(b));
    auto d = dual_basis(b);
    for (int i = 0; i < 4; ++i) {
      CHECK(d[i].is_integral());
      for (int j = 0; j < 4; ++j) CHECK(pairing(d[i], b[j]) == (i == j ? 1 : 0));
    }
    LatticeVector v = random_vector(rng, 9);
    auto c = express_in_basis(v, b);
    LatticeVector back = c[0] * b[0] + c[1] * b[1] + c[2] * b[2] + c[3] * b[3];
    CHECK(back == v);
  }
}

TEST_CASE("express in basis") {
  auto c = express_in_basis(LatticeVector(2, 3, 0, -1), {e1, e2, e3, e4});
  CHECK(c == std::array<Integer, 4>{2, 3, 0, -1});
  auto u = express_in_basis(e1, {e1, e2, e3, e4});
  CHECK(u == std::array<Integer, 4>{1, 0, 0, 0});
}

TEST_CASE("primitive vectors") {
  CHECK(LatticeVector(2, 3, 0, -1).is_primitive());
  CHECK_FALSE(LatticeVector(2, 4, 0, -2).is_primitive());
  CHECK_FALSE(LatticeVector(0, 0, 0, 0).is_primitive());
}

TEST_CASE("nullspace vectors are annihilated") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t rows = 1 + trial % 5, cols = 6;
    RationalMatrix a(rows, RationalVector(cols));
    for (auto& r : a)
      for (auto& v : r) v = d(rng);
    auto ns = nullspace(a, cols);
    CHECK(ns.size() + rank(a, cols) == cols);
    for (const auto& v : ns)
      for (const auto& r : a) {
        Rational s = 0;
        for (std::size_t k = 0; k < cols; ++k) s += r[k] * v[k];
        CHECK(s == 0);
      }
  }
}

TEST_CASE("hermite rows keep the row lattice") {
  IntegerMatrix a{{2, 4, 6}, {1, 1, 1}};
  auto h = hermite_rows(a, 3);
  REQUIRE(h.size() == 2);
  CHECK(h[0][0] > 0);
  CHECK(h[1][0] == 0);
}

TEST_CASE("exact LP agrees with Fourier-Motzkin on random systems") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> rel(0, 2);
  int feasible_count = 0, infeasible_count = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t vars = 2 + trial % 3;
    lp::Problem p(vars);
    for (std::size_t v = 0; v < vars; ++v) p.nonnegative[v] = (rng() % 2) == 0;
    const std::size_t cons = 2 + rng() % 5;
    for (std::size_t c = 0; c < cons; ++c) {
      RationalVector row(vars);
      for (auto& r : row) r = coef(rng);
      const int r = rel(rng);
      p.add(row, r == 0 ? lp::Relation::LessEqual : r == 1 ? lp::Relation::GreaterEqual : lp::Relation::Equal,
            coef(rng));
    }
    const bool expected = oracle::fourier_motzkin_feasible(oracle::to_inequalities(p), vars);
    auto sol = lp::solve(p);
    CHECK((sol.status != lp::Status::Infeasible) == expected);
    if (sol.status != lp::Status::Infeasible) {
      ++feasible_count;
      for (auto& ineq : oracle::to_inequalities(p)) {
        Rational lhs = 0;
        for (std::size_t k = 0; k < vars; ++k) lhs += ineq.a[k] * sol.point[k];
        CHECK(lhs >= ineq.b);
      }
    } else {
      ++infeasible_count;
    }
  }
  CHECK(feasible_count > 50);
  CHECK(infeasible_count > 50);
}

TEST_CASE("LP optimum") {
  // max x + y s.t. x + 2y <= 4, 3x + y <= 6, x, y >= 0 -> (8/5, 6/5), value 14/5.
  lp::Problem p(2);
  p.nonnegative = {true, true};
  p.add({1, 2}, lp::Relation::LessEqual, 4);
  p.add({3, 1}, lp::Relation::LessEqual, 6);
  p.objective = {1, 1};
  auto s = lp::solve(p);
  REQUIRE(s.status == lp::Status::Optimal);
  CHECK(s.value == Rational(14, 5));

  lp::Problem u(1);
  u.objective = {1};
  u.add({1}, lp::Relation::GreaterEqual, 0);
  CHECK(lp::solve(u).status == lp::Status::Unbounded);
}
