#pragma once

#include <vector>

#include "fcone/rational.hpp"

namespace fcone {

using RationalMatrix = std::vector<std::vector<Rational>>;

struct RowEchelon {
  RationalMatrix rows;       // reduced row echelon form, zero rows dropped
  std::vector<int> pivots;   // pivot column of each row
};

RowEchelon row_reduce(RationalMatrix m, std::size_t cols);
std::size_t matrix_rank(const RationalMatrix& m, std::size_t cols);
// Basis of {x : m x = 0}, one vector per row.
RationalMatrix nullspace(const RationalMatrix& m, std::size_t cols);

}  // namespace fcone
