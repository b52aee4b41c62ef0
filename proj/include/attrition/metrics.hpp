#pragma once

#include <cstdint>
#include <span>

#include "attrition/errors.hpp"

namespace attrition {

/// Binary confusion counts with graduation (label 1) as the positive class.
struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const { return tp + fp + tn + fn; }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

inline ConfusionCounts confusion(std::span<const std::uint8_t> labels,
                                 std::span<const std::uint8_t> preds) {
  if (labels.size() != preds.size()) throw ConfigError("label/prediction length mismatch");
  if (labels.empty()) throw DataError("empty labels");
  ConfusionCounts c;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool y = labels[i] != 0;
    const bool p = preds[i] != 0;
    if (y && p) ++c.tp;
    else if (!y && p) ++c.fp;
    else if (!y && !p) ++c.tn;
    else ++c.fn;
  }
  return c;
}

inline double f1_score(double precision, double recall) {
  const double denom = precision + recall;
  if (denom == 0.0) return 0.0;
  return 2.0 * precision * recall / denom;
}

/// Classification metrics. A ratio whose denominator is zero reports 0.0
/// and clears the matching `*_defined` flag rather than producing NaN.
struct Metrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool precision_defined = true;
  bool recall_defined = true;
  bool f1_defined = true;
};

inline Metrics metrics_from_counts(const ConfusionCounts& c) {
  if (c.total() == 0) throw DataError("empty confusion counts");
  Metrics m;
  m.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
  if (c.tp + c.fp == 0) {
    m.precision_defined = false;
  } else {
    m.precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  }
  if (c.tp + c.fn == 0) {
    m.recall_defined = false;
  } else {
    m.recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  }
  if (!m.precision_defined || !m.recall_defined || m.precision + m.recall == 0.0) {
    m.f1_defined = false;
  } else {
    m.f1 = f1_score(m.precision, m.recall);
  }
  return m;
}

}  // namespace attrition
