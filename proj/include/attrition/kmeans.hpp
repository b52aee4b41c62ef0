#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "attrition/domain.hpp"
#include "attrition/errors.hpp"
#include "attrition/matrix.hpp"
#include "attrition/rng.hpp"

namespace attrition {

struct KMeansConfig {
  std::size_t k = 2;
  std::size_t restarts = 10;
  std::size_t max_iters = 300;
  double rel_tol = 1e-9;
  std::uint64_t seed = 0;

  void validate() const {
    if (k < 1) throw ConfigError("k must be >= 1");
    if (restarts < 1) throw ConfigError("restarts must be >= 1");
    if (max_iters < 1) throw ConfigError("max_iters must be >= 1");
    if (!(rel_tol >= 0.0)) throw ConfigError("rel_tol must be >= 0");
  }
};

/// Fitted clustering. Invariants: every assignment is the index of a nearest
/// centroid (ties to the lowest index), inertia is the sum of squared
/// distances to assigned centroids exactly as stored, and no cluster is
/// empty.
struct KMeansModel {
  std::size_t k = 0;
  Matrix centroids;  // k x d
  std::vector<std::uint32_t> assignments;
  double inertia = 0.0;
  KMeansConfig config;
};

/// Observer for per-iteration inertia, called once per Lloyd iteration of
/// every restart. Inertia is non-increasing within a restart.
using KMeansTrace = std::function<void(std::size_t restart, std::size_t iter, double inertia)>;

inline std::pair<std::size_t, double> nearest_centroid(const Matrix& centroids,
                                                       std::span<const double> x) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < centroids.rows; ++j) {
    const double d = squared_distance(centroids.row(j), x);
    if (d < best_d) {
      best_d = d;
      best = j;
    }
  }
  return {best, best_d};
}

namespace detail {

/// True iff the data has at least `want` distinct rows.
inline bool has_distinct_rows(const Matrix& x, std::size_t want) {
  std::vector<std::size_t> reps;
  for (std::size_t r = 0; r < x.rows && reps.size() < want; ++r) {
    bool fresh = true;
    for (const std::size_t rep : reps) {
      if (std::equal(x.row(r).begin(), x.row(r).end(), x.row(rep).begin())) {
        fresh = false;
        break;
      }
    }
    if (fresh) reps.push_back(r);
  }
  return reps.size() >= want;
}

inline Matrix kmeanspp_init(const Matrix& x, std::size_t k, Rng& rng) {
  Matrix centroids(k, x.cols);
  const std::size_t first = static_cast<std::size_t>(rng.below(x.rows));
  std::copy(x.row(first).begin(), x.row(first).end(), centroids.row(0).begin());

  std::vector<double> d2(x.rows);
  for (std::size_t i = 0; i < x.rows; ++i) {
    d2[i] = squared_distance(x.row(i), centroids.row(0));
  }
  for (std::size_t j = 1; j < k; ++j) {
    double total = 0.0;
    for (const double v : d2) total += v;
    // total > 0 is guaranteed by the distinct-rows precondition.
    const double target = rng.uniform() * total;
    double cum = 0.0;
    std::size_t pick = x.rows;
    for (std::size_t i = 0; i < x.rows; ++i) {
      cum += d2[i];
      if (cum > target && d2[i] > 0.0) {
        pick = i;
        break;
      }
    }
    if (pick == x.rows) {  // numeric edge: fall back to the farthest point
      double best = -1.0;
      for (std::size_t i = 0; i < x.rows; ++i) {
        if (d2[i] > best) {
          best = d2[i];
          pick = i;
        }
      }
    }
    std::copy(x.row(pick).begin(), x.row(pick).end(), centroids.row(j).begin());
    for (std::size_t i = 0; i < x.rows; ++i) {
      d2[i] = std::min(d2[i], squared_distance(x.row(i), centroids.row(j)));
    }
  }
  return centroids;
}

struct AssignResult {
  std::vector<std::uint32_t> assignments;
  std::vector<std::size_t> counts;
  double inertia = 0.0;
};

inline AssignResult assign_pass(const Matrix& x, const Matrix& centroids) {
  AssignResult r;
  r.assignments.resize(x.rows);
  r.counts.assign(centroids.rows, 0);
  for (std::size_t i = 0; i < x.rows; ++i) {
    const auto [j, d] = nearest_centroid(centroids, x.row(i));
    r.assignments[i] = static_cast<std::uint32_t>(j);
    r.counts[j] += 1;
    r.inertia += d;
  }
  return r;
}

/// Re-seed each empty cluster on the point currently farthest from its
/// centroid, keeping k fixed. Rare; a full reassignment after each re-seed
/// keeps the nearest-centroid invariant intact.
inline AssignResult repair_empty_clusters(const Matrix& x, Matrix& centroids,
                                          AssignResult r) {
  const std::size_t k = centroids.rows;
  for (std::size_t attempt = 0; attempt <= k; ++attempt) {
    std::size_t empty = k;
    for (std::size_t j = 0; j < k; ++j) {
      if (r.counts[j] == 0) {
        empty = j;
        break;
      }
    }
    if (empty == k) return r;

    std::size_t donor = x.rows;
    double worst = -1.0;
    for (std::size_t i = 0; i < x.rows; ++i) {
      if (r.counts[r.assignments[i]] < 2) continue;
      const double d = squared_distance(x.row(i), centroids.row(r.assignments[i]));
      if (d > worst) {
        worst = d;
        donor = i;
      }
    }
    if (donor == x.rows || worst <= 0.0) break;
    std::copy(x.row(donor).begin(), x.row(donor).end(), centroids.row(empty).begin());
    r = assign_pass(x, centroids);
  }
  for (const std::size_t c : r.counts) {
    if (c == 0) throw NumericError("degenerate data: unable to populate all clusters");
  }
  return r;
}

}  // namespace detail

/// Lloyd's algorithm with seeded k-means++ initialization. Runs
/// `cfg.restarts` independent restarts (sub-seeded from cfg.seed and the
/// restart index) and keeps the best-inertia model; the result is a pure
/// function of (data, config).
inline KMeansModel kmeans_fit(const Matrix& x, const KMeansConfig& cfg,
                              const KMeansTrace& trace = {}) {
  cfg.validate();
  if (x.rows == 0) throw DataError("empty data");
  if (x.rows < cfg.k) {
    throw DataError("fewer points than clusters: n=" + std::to_string(x.rows) +
                    ", k=" + std::to_string(cfg.k));
  }
  if (cfg.k >= 2 && !detail::has_distinct_rows(x, cfg.k)) {
    throw NumericError("degenerate data: fewer than k distinct points");
  }

  std::optional<KMeansModel> best;
  for (std::size_t restart = 0; restart < cfg.restarts; ++restart) {
    Rng rng(derive_seed(cfg.seed, restart));
    Matrix centroids = detail::kmeanspp_init(x, cfg.k, rng);

    detail::AssignResult cur;
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t iter = 1; iter <= cfg.max_iters; ++iter) {
      cur = detail::assign_pass(x, centroids);
      cur = detail::repair_empty_clusters(x, centroids, std::move(cur));
      if (trace) trace(restart, iter, cur.inertia);
      if (iter > 1 && (cur.inertia >= prev || prev - cur.inertia <= cfg.rel_tol * prev)) {
        break;
      }
      prev = cur.inertia;
      if (iter == cfg.max_iters) break;

      // Means update; assignment in the next iteration restores consistency.
      std::fill(centroids.cells.begin(), centroids.cells.end(), 0.0);
      for (std::size_t i = 0; i < x.rows; ++i) {
        auto c = centroids.row(cur.assignments[i]);
        const auto row = x.row(i);
        for (std::size_t d = 0; d < x.cols; ++d) c[d] += row[d];
      }
      for (std::size_t j = 0; j < cfg.k; ++j) {
        auto c = centroids.row(j);
        const double inv = 1.0 / static_cast<double>(cur.counts[j]);
        for (std::size_t d = 0; d < x.cols; ++d) c[d] *= inv;
      }
    }

    if (!best || cur.inertia < best->inertia) {
      best = KMeansModel{cfg.k, std::move(centroids), std::move(cur.assignments),
                         cur.inertia, cfg};
    }
  }
  return std::move(*best);
}

inline KMeansModel kmeans_fit(const GradeMatrix& m, const KMeansConfig& cfg,
                              const KMeansTrace& trace = {}) {
  return kmeans_fit(m.values, cfg, trace);
}

}  // namespace attrition
