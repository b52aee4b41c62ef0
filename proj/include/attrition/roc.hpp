#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "attrition/errors.hpp"

namespace attrition {

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
  double threshold = 0.0;  // score cutoff: predict positive when score >= threshold
};

struct RocCurve {
  std::vector<RocPoint> points;
  double auc = 0.0;
};

inline double auc_from_points(std::span<const RocPoint> points) {
  double auc = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    auc += (points[i].fpr - points[i - 1].fpr) * (points[i].tpr + points[i - 1].tpr) * 0.5;
  }
  return auc;
}

/// ROC by sweeping the threshold across distinct score values, descending.
/// Tied scores move the curve in one step, so the trapezoidal AUC equals
/// pairwise concordance with ties counted half.
inline RocCurve roc_curve(std::span<const std::uint8_t> labels,
                          std::span<const double> scores) {
  if (labels.size() != scores.size()) throw ConfigError("label/score length mismatch");
  if (labels.empty()) throw DataError("empty labels");
  std::size_t pos = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!std::isfinite(scores[i])) throw DataError("non-finite score");
    if (labels[i] != 0) ++pos;
  }
  const std::size_t neg = labels.size() - pos;
  if (pos == 0 || neg == 0) throw DataError("roc requires both classes present");

  std::vector<std::size_t> order(labels.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });

  RocCurve curve;
  curve.points.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    const double s = scores[order[i]];
    while (i < order.size() && scores[order[i]] == s) {
      if (labels[order[i]] != 0) ++tp;
      else ++fp;
      ++i;
    }
    curve.points.push_back({static_cast<double>(fp) / static_cast<double>(neg),
                            static_cast<double>(tp) / static_cast<double>(pos), s});
  }
  curve.auc = auc_from_points(curve.points);
  return curve;
}

}  // namespace attrition
