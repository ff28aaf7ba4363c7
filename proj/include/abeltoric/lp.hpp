#pragma once

#include <cstddef>
#include <vector>

#include "abeltoric/linalg.hpp"

namespace abeltoric::lp {

enum class Relation { LessEqual, GreaterEqual, Equal };

struct Constraint {
  RationalVector coeffs;
  Relation relation = Relation::LessEqual;
  Rational rhs = 0;
};

// Maximize objective . x subject to the constraints. Variables are free unless
// flagged nonnegative. An empty objective asks for feasibility only.
struct Problem {
  std::size_t num_vars = 0;
  std::vector<bool> nonnegative;
  std::vector<Constraint> constraints;
  RationalVector objective;

  explicit Problem(std::size_t n) : num_vars(n), nonnegative(n, false) {}

  void add(RationalVector coeffs, Relation rel, Rational rhs) {
    constraints.push_back({std::move(coeffs), rel, std::move(rhs)});
  }
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
  Status status = Status::Infeasible;
  RationalVector point;  // feasible point (optimal when Status::Optimal)
  Rational value = 0;
};

// Two-phase primal simplex over exact rationals with Bland's rule.
Solution solve(const Problem& problem);

inline bool feasible(const Problem& problem) {
  return solve(problem).status != Status::Infeasible;
}

}  // namespace abeltoric::lp
