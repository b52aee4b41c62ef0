#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "attrition/errors.hpp"
#include "attrition/kmeans.hpp"
#include "attrition/matrix.hpp"

namespace attrition {

/// Calinski-Harabasz score of a partition:
///   (SSB / (k - 1)) / (SSW / (n - k))
/// with SSB the count-weighted squared distance of cluster means to the
/// grand mean and SSW the within-cluster sum of squares. A perfect fit
/// (SSW == 0) scores +infinity so tighter partitions always dominate.
inline double ch_index(const Matrix& x, std::span<const std::uint32_t> assignments,
                       std::size_t k) {
  const std::size_t n = x.rows;
  if (assignments.size() != n) throw ConfigError("assignment length mismatch");
  if (k < 2 || k >= n) {
    throw ConfigError("ch_index requires 2 <= k <= n-1, got k=" + std::to_string(k) +
                      ", n=" + std::to_string(n));
  }

  std::vector<double> sums(k * x.cols, 0.0);
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t j = assignments[i];
    if (j >= k) throw DataError("assignment label out of range");
    counts[j] += 1;
    const auto row = x.row(i);
    for (std::size_t d = 0; d < x.cols; ++d) sums[j * x.cols + d] += row[d];
  }
  for (const std::size_t c : counts) {
    if (c == 0) throw DataError("empty cluster in assignment");
  }

  Matrix centroids(k, x.cols);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t d = 0; d < x.cols; ++d) {
      centroids.at(j, d) = sums[j * x.cols + d] / static_cast<double>(counts[j]);
    }
  }
  const std::vector<double> grand = column_means(x);

  double ssw = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ssw += squared_distance(x.row(i), centroids.row(assignments[i]));
  }
  double ssb = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    ssb += static_cast<double>(counts[j]) * squared_distance(centroids.row(j), grand);
  }

  if (ssw == 0.0) return std::numeric_limits<double>::infinity();
  const double between = ssb / static_cast<double>(k - 1);
  const double within = ssw / static_cast<double>(n - k);
  return between / within;
}

inline double ch_index(const Matrix& x, const KMeansModel& model) {
  return ch_index(x, model.assignments, model.k);
}

}  // namespace attrition
