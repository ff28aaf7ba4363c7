#include "abeltoric/linalg.hpp"

#include <utility>

namespace abeltoric {

ReducedRowEchelon reduced_row_echelon(RationalMatrix a, std::size_t cols) {
  ReducedRowEchelon out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[r], a[p]);
    Rational inv = 1 / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    out.pivots.push_back(c);
    ++r;
  }
  a.resize(r);
  out.rows = std::move(a);
  return out;
}

std::size_t rank(const RationalMatrix& a, std::size_t cols) {
  return reduced_row_echelon(a, cols).pivots.size();
}

RationalMatrix nullspace(const RationalMatrix& a, std::size_t cols) {
  auto rre = reduced_row_echelon(a, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : rre.pivots) is_pivot[p] = true;
  RationalMatrix basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(cols, Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < rre.rows.size(); ++i) v[rre.pivots[i]] = -rre.rows[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RationalVector> solve_row_combination(const RationalMatrix& rows,
                                                    const RationalVector& target) {
  // Columns of the system are the given rows; augment with the target.
  const std::size_t k = rows.size();
  const std::size_t len = target.size();
  RationalMatrix sys(len, RationalVector(k + 1));
  for (std::size_t j = 0; j < len; ++j) {
    for (std::size_t i = 0; i < k; ++i) sys[j][i] = rows[i][j];
    sys[j][k] = target[j];
  }
  auto rre = reduced_row_echelon(std::move(sys), k + 1);
  RationalVector x(k, Rational(0));
  for (std::size_t i = 0; i < rre.rows.size(); ++i) {
    if (rre.pivots[i] == k) return std::nullopt;
    x[rre.pivots[i]] = rre.rows[i][k];
  }
  return x;
}

RationalMatrix to_rational(const IntegerMatrix& a) {
  RationalMatrix out;
  out.reserve(a.size());
  for (const auto& row : a) out.emplace_back(row.begin(), row.end());
  return out;
}

IntegerMatrix hermite_rows(IntegerMatrix a, std::size_t cols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    // Euclid on column c among rows r.. until a single nonzero entry remains.
    while (true) {
      std::size_t best = a.size();
      for (std::size_t i = r; i < a.size(); ++i) {
        if (a[i][c] != 0 && (best == a.size() || abs(a[i][c]) < abs(a[best][c]))) best = i;
      }
      if (best == a.size()) break;
      std::swap(a[r], a[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < a.size(); ++i) {
        if (a[i][c] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
        for (std::size_t j = c; j < cols; ++j) a[i][j] -= q * a[r][j];
        if (a[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (r < a.size() && a[r][c] != 0) {
      if (a[r][c] < 0) {
        for (std::size_t j = c; j < cols; ++j) a[r][j] = -a[r][j];
      }
      for (std::size_t i = 0; i < r; ++i) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
        if (q != 0) {
          for (std::size_t j = c; j < cols; ++j) a[i][j] -= q * a[r][j];
        }
      }
      ++r;
    }
  }
  a.resize(r);
  return a;
}

}  // namespace abeltoric
