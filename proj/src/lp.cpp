#include "abeltoric/lp.hpp"

#include "abeltoric/error.hpp"

#include <optional>

namespace abeltoric::lp {

namespace {

struct Tableau {
  RationalMatrix a;        // m x ncols
  RationalVector b;        // m
  std::vector<std::size_t> basis;
  std::size_t ncols = 0;
  std::vector<bool> forbidden;

  void pivot(std::size_t row, std::size_t col) {
    Rational inv = 1 / a[row][col];
    for (auto& v : a[row]) {
      if (v != 0) v *= inv;
    }
    b[row] *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == row || a[i][col] == 0) continue;
      Rational f = a[i][col];
      for (std::size_t j = 0; j < ncols; ++j) {
        if (a[row][j] != 0) a[i][j] -= f * a[row][j];
      }
      b[i] -= f * b[row];
    }
    basis[row] = col;
  }

  // Minimizes cost . x from the current basic feasible solution.
  // Returns false when unbounded.
  bool minimize(const RationalVector& cost) {
    while (true) {
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < ncols && !entering; ++j) {
        if (forbidden[j]) continue;
        Rational d = cost[j];
        for (std::size_t i = 0; i < a.size(); ++i) {
          if (a[i][j] != 0 && cost[basis[i]] != 0) d -= cost[basis[i]] * a[i][j];
        }
        if (d < 0) entering = j;
      }
      if (!entering) return true;
      const std::size_t col = *entering;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i][col] <= 0) continue;
        Rational ratio = b[i] / a[i][col];
        if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, col);
    }
  }

  Rational value(const RationalVector& cost) const {
    Rational v = 0;
    for (std::size_t i = 0; i < a.size(); ++i) v += cost[basis[i]] * b[i];
    return v;
  }
};

}  // namespace

Solution solve(const Problem& problem) {
  const std::size_t n = problem.num_vars;
  if (problem.nonnegative.size() != n) {
    throw Error(ErrorKind::Internal, "lp: nonnegativity flags do not match variable count");
  }
  // Structural columns: one per nonnegative variable, two per free variable.
  std::vector<std::size_t> plus_col(n), minus_col(n, SIZE_MAX);
  std::size_t ncols = 0;
  for (std::size_t v = 0; v < n; ++v) {
    plus_col[v] = ncols++;
    if (!problem.nonnegative[v]) minus_col[v] = ncols++;
  }
  const std::size_t structural = ncols;

  const std::size_t m = problem.constraints.size();
  std::vector<Relation> rel(m);
  std::vector<bool> flip(m, false);
  std::size_t slack_count = 0, art_count = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = problem.constraints[i];
    if (c.coeffs.size() != n) throw Error(ErrorKind::Internal, "lp: constraint width mismatch");
    rel[i] = c.relation;
    if (c.rhs < 0) {
      flip[i] = true;
      if (rel[i] == Relation::LessEqual) rel[i] = Relation::GreaterEqual;
      else if (rel[i] == Relation::GreaterEqual) rel[i] = Relation::LessEqual;
    }
    if (rel[i] != Relation::Equal) ++slack_count;
    if (rel[i] != Relation::LessEqual) ++art_count;
  }
  const std::size_t art_begin = structural + slack_count;
  ncols = art_begin + art_count;

  Tableau t;
  t.ncols = ncols;
  t.a.assign(m, RationalVector(ncols, Rational(0)));
  t.b.assign(m, Rational(0));
  t.basis.assign(m, 0);
  t.forbidden.assign(ncols, false);

  std::size_t next_slack = structural, next_art = art_begin;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = problem.constraints[i];
    for (std::size_t v = 0; v < n; ++v) {
      if (c.coeffs[v] == 0) continue;
      Rational x = flip[i] ? Rational(-c.coeffs[v]) : c.coeffs[v];
      t.a[i][plus_col[v]] = x;
      if (minus_col[v] != SIZE_MAX) t.a[i][minus_col[v]] = -x;
    }
    t.b[i] = flip[i] ? Rational(-c.rhs) : c.rhs;
    switch (rel[i]) {
      case Relation::LessEqual:
        t.a[i][next_slack] = 1;
        t.basis[i] = next_slack++;
        break;
      case Relation::GreaterEqual:
        t.a[i][next_slack++] = -1;
        t.a[i][next_art] = 1;
        t.basis[i] = next_art++;
        break;
      case Relation::Equal:
        t.a[i][next_art] = 1;
        t.basis[i] = next_art++;
        break;
    }
  }

  // Phase 1: drive the artificial variables to zero.
  if (art_count > 0) {
    RationalVector cost(ncols, Rational(0));
    for (std::size_t j = art_begin; j < ncols; ++j) cost[j] = 1;
    t.minimize(cost);
    if (t.value(cost) > 0) return Solution{Status::Infeasible, {}, 0};
    for (std::size_t i = 0; i < t.a.size();) {
      if (t.basis[i] < art_begin) {
        ++i;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < art_begin && !col; ++j) {
        if (t.a[i][j] != 0) col = j;
      }
      if (col) {
        t.pivot(i, *col);
        ++i;
      } else {
        // Redundant equality row.
        t.a.erase(t.a.begin() + static_cast<std::ptrdiff_t>(i));
        t.b.erase(t.b.begin() + static_cast<std::ptrdiff_t>(i));
        t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
    for (std::size_t j = art_begin; j < ncols; ++j) t.forbidden[j] = true;
  }

  Solution sol;
  sol.status = Status::Optimal;
  if (!problem.objective.empty()) {
    RationalVector cost(ncols, Rational(0));
    for (std::size_t v = 0; v < n; ++v) {
      cost[plus_col[v]] = -problem.objective[v];
      if (minus_col[v] != SIZE_MAX) cost[minus_col[v]] = problem.objective[v];
    }
    if (!t.minimize(cost)) sol.status = Status::Unbounded;
  }

  RationalVector colval(ncols, Rational(0));
  for (std::size_t i = 0; i < t.a.size(); ++i) colval[t.basis[i]] = t.b[i];
  sol.point.assign(n, Rational(0));
  for (std::size_t v = 0; v < n; ++v) {
    sol.point[v] = colval[plus_col[v]];
    if (minus_col[v] != SIZE_MAX) sol.point[v] -= colval[minus_col[v]];
  }
  if (!problem.objective.empty()) {
    for (std::size_t v = 0; v < n; ++v) sol.value += problem.objective[v] * sol.point[v];
  }
  return sol;
}

}  // namespace abeltoric::lp
