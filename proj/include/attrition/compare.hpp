#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "attrition/cluster_classifier.hpp"
#include "attrition/crossval.hpp"
#include "attrition/domain.hpp"
#include "attrition/errors.hpp"
#include "attrition/logistic.hpp"
#include "attrition/metrics.hpp"
#include "attrition/rng.hpp"
#include "attrition/roc.hpp"

namespace attrition {

struct CompareConfig {
  KMeansConfig kmeans;        // k, restarts etc. for the cluster classifier
  LogisticConfig logistic;
  std::size_t folds = 5;
  std::size_t first_n = 3;    // size of the early-pathway feature subset
  double threshold = 0.5;     // applied to both classifiers
  std::uint64_t seed = 0;
};

/// One classifier evaluated on one feature set. Scores and predictions are
/// pooled over cross-validation: every row was scored by the fold model that
/// did not train on it, and they are stored in original row order.
struct EvalReport {
  std::string classifier;
  std::string feature_set;
  ConfusionCounts counts;
  Metrics metrics;
  RocCurve roc;
  std::vector<double> scores;
  std::vector<std::uint8_t> predictions;
};

struct CompareResult {
  std::vector<EvalReport> entries;  // cluster/full, cluster/first, logistic/full, logistic/first
};

namespace detail {

template <typename FitScore>
EvalReport pooled_eval(const GradeMatrix& m, const std::vector<FoldSplit>& splits,
                       std::string classifier, std::string feature_set,
                       double threshold, FitScore&& fit_score) {
  EvalReport report;
  report.classifier = std::move(classifier);
  report.feature_set = std::move(feature_set);
  report.scores.assign(m.n(), 0.0);

  std::vector<std::uint8_t> train_labels;
  for (std::size_t f = 0; f < splits.size(); ++f) {
    const Matrix train_x = rows_subset(m.values, splits[f].train);
    train_labels.clear();
    for (const std::size_t i : splits[f].train) train_labels.push_back(m.labels[i]);
    const Matrix test_x = rows_subset(m.values, splits[f].test);
    const std::vector<double> scores = fit_score(train_x, train_labels, test_x, f);
    for (std::size_t t = 0; t < splits[f].test.size(); ++t) {
      report.scores[splits[f].test[t]] = scores[t];
    }
  }

  report.predictions.resize(m.n());
  for (std::size_t i = 0; i < m.n(); ++i) {
    report.predictions[i] = report.scores[i] >= threshold ? 1 : 0;
  }
  report.counts = confusion(m.labels, report.predictions);
  report.metrics = metrics_from_counts(report.counts);
  report.roc = roc_curve(m.labels, report.scores);
  return report;
}

}  // namespace detail

/// Evaluates the cluster classifier and the logistic baseline on the full
/// grade matrix and on the first-n pathway subset, using one shared
/// stratified split so every cell sees identical folds.
inline CompareResult compare_classifiers(const GradeMatrix& m, const CurriculumSpec& spec,
                                         const CompareConfig& cfg) {
  if (cfg.folds < 2) throw ConfigError("folds must be >= 2");
  cfg.kmeans.validate();
  cfg.logistic.validate();

  const GradeMatrix first = subset_first_k(m, spec, cfg.first_n);
  const auto splits = kfold_split(m.labels, cfg.folds, derive_seed(cfg.seed, 99));
  const std::string first_name = "first_" + std::to_string(cfg.first_n);

  const auto cluster_fit = [&](std::size_t feature_tag) {
    return [&, feature_tag](const Matrix& train_x, const std::vector<std::uint8_t>& train_y,
                            const Matrix& test_x, std::size_t fold) {
      ClusterClassifierConfig cc;
      cc.kmeans = cfg.kmeans;
      cc.kmeans.seed = derive_seed(cfg.seed, 10 + feature_tag, fold);
      cc.threshold = cfg.threshold;
      return fit_cluster_classifier(train_x, train_y, cc).score_rows(test_x);
    };
  };
  const auto logistic_fit = [&](const Matrix& train_x, const std::vector<std::uint8_t>& train_y,
                                const Matrix& test_x, std::size_t) {
    LogisticConfig lc = cfg.logistic;
    lc.threshold = cfg.threshold;
    return fit_logistic(train_x, train_y, lc).score_rows(test_x);
  };

  CompareResult result;
  result.entries.push_back(
      detail::pooled_eval(m, splits, "cluster", "full", cfg.threshold, cluster_fit(0)));
  result.entries.push_back(
      detail::pooled_eval(first, splits, "cluster", first_name, cfg.threshold, cluster_fit(1)));
  result.entries.push_back(
      detail::pooled_eval(m, splits, "logistic", "full", cfg.threshold, logistic_fit));
  result.entries.push_back(
      detail::pooled_eval(first, splits, "logistic", first_name, cfg.threshold, logistic_fit));
  return result;
}

}  // namespace attrition
