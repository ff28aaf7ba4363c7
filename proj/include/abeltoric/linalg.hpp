#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "abeltoric/arith.hpp"

namespace abeltoric {

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;  // row-major
using IntegerMatrix = std::vector<std::vector<Integer>>;

struct ReducedRowEchelon {
  RationalMatrix rows;            // nonzero rows only
  std::vector<std::size_t> pivots;  // pivot column of each row
};

ReducedRowEchelon reduced_row_echelon(RationalMatrix a, std::size_t cols);

std::size_t rank(const RationalMatrix& a, std::size_t cols);

// Basis of {x : a x = 0}, one vector per free column.
RationalMatrix nullspace(const RationalMatrix& a, std::size_t cols);

// Some x with sum_i x_i * rows[i] = target, if one exists.
std::optional<RationalVector> solve_row_combination(const RationalMatrix& rows,
                                                    const RationalVector& target);

RationalMatrix to_rational(const IntegerMatrix& a);

// Integer row Hermite form (upper triangular, positive pivots). Zero rows dropped.
IntegerMatrix hermite_rows(IntegerMatrix a, std::size_t cols);

}  // namespace abeltoric
