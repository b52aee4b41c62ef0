#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "attrition/crossval.hpp"
#include "attrition/domain.hpp"
#include "attrition/errors.hpp"
#include "attrition/kmeans.hpp"
#include "attrition/matrix.hpp"
#include "attrition/rng.hpp"
#include "attrition/validity.hpp"

namespace attrition {

struct SelectKConfig {
  std::size_t k_min = 2;
  std::size_t k_max = 6;
  std::size_t folds = 5;
  std::size_t restarts = 10;
  std::size_t max_iters = 300;
  double rel_tol = 1e-9;
  /// When set, each fold is scored on its held-out rows (assigned to the
  /// nearest trained centroid) instead of on the training rows.
  bool score_on_holdout = false;
  std::uint64_t seed = 0;

  void validate() const {
    if (k_min < 2) throw ConfigError("k_min must be >= 2");
    if (k_max < k_min) throw ConfigError("k_max must be >= k_min");
    if (folds < 2) throw ConfigError("folds must be >= 2");
    if (restarts < 1) throw ConfigError("restarts must be >= 1");
  }
};

struct KScore {
  std::size_t k = 0;
  double mean_ch = 0.0;
  std::vector<double> fold_ch;
};

struct SelectKResult {
  std::size_t chosen_k = 0;
  std::vector<KScore> per_k;
};

/// Argmax of mean CH; ties go to the smallest k. Scores are scanned in the
/// given order, so callers pass them ascending in k.
inline std::size_t choose_best_k(std::span<const KScore> scores) {
  if (scores.empty()) throw ConfigError("no candidate k scores");
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i].mean_ch > scores[best].mean_ch) best = i;
  }
  return scores[best].k;
}

namespace detail {

inline double holdout_ch(const Matrix& test_x, const KMeansModel& model) {
  const std::size_t k = model.k;
  std::vector<std::uint32_t> assign(test_x.rows);
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t i = 0; i < test_x.rows; ++i) {
    assign[i] = static_cast<std::uint32_t>(nearest_centroid(model.centroids, test_x.row(i)).first);
    counts[assign[i]] += 1;
  }
  // Compact away clusters the held-out rows never touch.
  std::vector<std::uint32_t> remap(k, 0);
  std::uint32_t k_eff = 0;
  for (std::size_t j = 0; j < k; ++j) {
    if (counts[j] > 0) remap[j] = k_eff++;
  }
  if (k_eff < 2 || test_x.rows <= k_eff) return 0.0;  // partition carries no signal
  for (auto& a : assign) a = remap[a];
  return ch_index(test_x, assign, k_eff);
}

}  // namespace detail

/// Scores each candidate k by mean CH across stratified folds and picks the
/// argmax. By default a fold's model is scored on the rows it was fit on;
/// cfg.score_on_holdout switches to the held-out rows.
inline SelectKResult select_k(const Matrix& x, std::span<const std::uint8_t> labels,
                              const SelectKConfig& cfg) {
  cfg.validate();
  if (x.rows != labels.size()) throw ConfigError("label length mismatch");

  const auto splits = kfold_split(labels, cfg.folds, derive_seed(cfg.seed, 9000));
  for (const auto& split : splits) {
    if (split.train.size() <= cfg.k_max) {
      throw DataError("insufficient samples: a training fold has " +
                      std::to_string(split.train.size()) + " rows, k_max=" +
                      std::to_string(cfg.k_max));
    }
  }

  SelectKResult result;
  for (std::size_t k = cfg.k_min; k <= cfg.k_max; ++k) {
    KScore score;
    score.k = k;
    for (std::size_t f = 0; f < splits.size(); ++f) {
      const Matrix train_x = rows_subset(x, splits[f].train);
      KMeansConfig kc;
      kc.k = k;
      kc.restarts = cfg.restarts;
      kc.max_iters = cfg.max_iters;
      kc.rel_tol = cfg.rel_tol;
      kc.seed = derive_seed(cfg.seed, k, f);
      const KMeansModel model = kmeans_fit(train_x, kc);
      double ch = 0.0;
      if (cfg.score_on_holdout) {
        const Matrix test_x = rows_subset(x, splits[f].test);
        ch = detail::holdout_ch(test_x, model);
      } else {
        ch = ch_index(train_x, model);
      }
      score.fold_ch.push_back(ch);
    }
    double total = 0.0;
    for (const double v : score.fold_ch) total += v;
    score.mean_ch = total / static_cast<double>(score.fold_ch.size());
    result.per_k.push_back(std::move(score));
  }
  result.chosen_k = choose_best_k(result.per_k);
  return result;
}

inline SelectKResult select_k(const GradeMatrix& m, const SelectKConfig& cfg) {
  return select_k(m.values, m.labels, cfg);
}

}  // namespace attrition
