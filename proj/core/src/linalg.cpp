#include "fcone/linalg.hpp"

#include "fcone/error.hpp"

namespace fcone {

RowEchelon row_reduce(RationalMatrix m, std::size_t cols) {
  for (const auto& row : m)
    if (row.size() != cols) throw DomainError("ragged matrix");
  RowEchelon out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational factor = m[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (m[r][j] != 0) m[i][j] -= factor * m[r][j];
    }
    out.pivots.push_back(static_cast<int>(c));
    ++r;
  }
  m.resize(r);
  out.rows = std::move(m);
  return out;
}

std::size_t matrix_rank(const RationalMatrix& m, std::size_t cols) { return row_reduce(m, cols).pivots.size(); }

RationalMatrix nullspace(const RationalMatrix& m, std::size_t cols) {
  auto ech = row_reduce(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (int p : ech.pivots) is_pivot[p] = true;
  RationalMatrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < ech.rows.size(); ++r) v[ech.pivots[r]] = -ech.rows[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace fcone
