#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "attrition/domain.hpp"
#include "attrition/errors.hpp"
#include "attrition/kmeans.hpp"
#include "attrition/matrix.hpp"

namespace attrition {

struct ClusterClassifierConfig {
  KMeansConfig kmeans;
  double threshold = 0.5;
};

/// Clusters the training rows, then scores any row by the graduation rate of
/// its nearest cluster: p(graduate | x) = graduates in cluster / cluster size.
struct ClusterClassifier {
  KMeansModel clustering;
  std::vector<double> grad_fraction;  // per cluster
  std::vector<std::size_t> sizes;
  double threshold = 0.5;

  double predict_score(std::span<const double> x) const {
    return grad_fraction[nearest_centroid(clustering.centroids, x).first];
  }
  std::uint8_t predict_label(std::span<const double> x) const {
    return predict_score(x) >= threshold ? 1 : 0;
  }
  std::vector<double> score_rows(const Matrix& m) const {
    std::vector<double> s(m.rows);
    for (std::size_t i = 0; i < m.rows; ++i) s[i] = predict_score(m.row(i));
    return s;
  }
  std::vector<std::uint8_t> predict_rows(const Matrix& m) const {
    std::vector<std::uint8_t> p(m.rows);
    for (std::size_t i = 0; i < m.rows; ++i) p[i] = predict_label(m.row(i));
    return p;
  }
};

/// Attach graduate fractions to an existing clustering. Every cluster must
/// have training members (guaranteed for models from kmeans_fit).
inline ClusterClassifier make_cluster_classifier(KMeansModel clustering,
                                                 std::span<const std::uint8_t> labels,
                                                 double threshold = 0.5) {
  if (clustering.assignments.size() != labels.size()) {
    throw ConfigError("label length mismatch");
  }
  ClusterClassifier model;
  model.clustering = std::move(clustering);
  model.threshold = threshold;
  model.sizes.assign(model.clustering.k, 0);
  std::vector<std::size_t> grads(model.clustering.k, 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::uint32_t j = model.clustering.assignments[i];
    model.sizes[j] += 1;
    if (labels[i] != 0) grads[j] += 1;
  }
  model.grad_fraction.resize(model.clustering.k);
  for (std::size_t j = 0; j < model.clustering.k; ++j) {
    if (model.sizes[j] == 0) throw DataError("cluster with no training members");
    model.grad_fraction[j] =
        static_cast<double>(grads[j]) / static_cast<double>(model.sizes[j]);
  }
  return model;
}

inline ClusterClassifier fit_cluster_classifier(const Matrix& x,
                                                std::span<const std::uint8_t> labels,
                                                const ClusterClassifierConfig& cfg) {
  if (x.rows != labels.size()) throw ConfigError("label length mismatch");
  return make_cluster_classifier(kmeans_fit(x, cfg.kmeans), labels, cfg.threshold);
}

inline ClusterClassifier fit_cluster_classifier(const GradeMatrix& m,
                                                const ClusterClassifierConfig& cfg) {
  return fit_cluster_classifier(m.values, m.labels, cfg);
}

}  // namespace attrition
