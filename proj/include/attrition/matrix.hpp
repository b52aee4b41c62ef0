#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

namespace attrition {

/// Dense row-major matrix of doubles. Just enough linear-algebra surface for
/// clustering and regression on encoded grade data.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> cells;  // rows * cols, row-major

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), cells(r * c, fill) {}

  double& at(std::size_t r, std::size_t c) { return cells[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return cells[r * cols + c]; }

  std::span<const double> row(std::size_t r) const {
    return {cells.data() + r * cols, cols};
  }
  std::span<double> row(std::size_t r) {
    return {cells.data() + r * cols, cols};
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline Matrix rows_subset(const Matrix& m, std::span<const std::size_t> idx) {
  Matrix out(idx.size(), m.cols);
  for (std::size_t r = 0; r < idx.size(); ++r) {
    const auto src = m.row(idx[r]);
    std::copy(src.begin(), src.end(), out.row(r).begin());
  }
  return out;
}

/// Column-wise mean of all rows.
inline std::vector<double> column_means(const Matrix& m) {
  std::vector<double> mean(m.cols, 0.0);
  for (std::size_t r = 0; r < m.rows; ++r) {
    const auto row = m.row(r);
    for (std::size_t c = 0; c < m.cols; ++c) mean[c] += row[c];
  }
  if (m.rows > 0) {
    for (double& v : mean) v /= static_cast<double>(m.rows);
  }
  return mean;
}

}  // namespace attrition
