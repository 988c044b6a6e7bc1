#include "linalg.hpp"

#include "credal/errors.hpp"

namespace credal::detail {

std::vector<std::size_t> row_reduce(RationalMatrix& m, std::size_t num_cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < num_cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[sel], m[row]);
    const Rational inv = 1 / m[row][col];
    for (auto& v : m[row]) v *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][col] == 0) continue;
      const Rational f = m[i][col];
      for (std::size_t j = 0; j < m[i].size(); ++j) {
        if (m[row][j] != 0) m[i][j] -= f * m[row][j];
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t rank(RationalMatrix m) {
  if (m.empty()) return 0;
  return row_reduce(m, m.front().size()).size();
}

std::optional<AffineSet> solve_affine(const RationalMatrix& a, const RationalVector& b, std::size_t num_cols) {
  if (a.size() != b.size()) throw DimensionError("solve_affine: row count mismatch");
  RationalMatrix aug;
  aug.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != num_cols) throw DimensionError("solve_affine: column count mismatch");
    RationalVector row = a[i];
    row.push_back(b[i]);
    aug.push_back(std::move(row));
  }
  const auto pivots = row_reduce(aug, num_cols);
  for (std::size_t i = pivots.size(); i < aug.size(); ++i) {
    if (aug[i][num_cols] != 0) return std::nullopt;
  }

  AffineSet out;
  out.particular.assign(num_cols, Rational(0));
  std::vector<bool> is_pivot(num_cols, false);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    out.particular[pivots[r]] = aug[r][num_cols];
    is_pivot[pivots[r]] = true;
  }
  for (std::size_t free_col = 0; free_col < num_cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    RationalVector v(num_cols, Rational(0));
    v[free_col] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -aug[r][free_col];
    out.nullspace.push_back(std::move(v));
  }
  return out;
}

std::optional<RationalVector> solve_square(const RationalMatrix& a, const RationalVector& b) {
  const std::size_t n = b.size();
  auto sol = solve_affine(a, b, n);
  if (!sol || !sol->nullspace.empty()) return std::nullopt;
  return std::move(sol->particular);
}

}  // namespace credal::detail
