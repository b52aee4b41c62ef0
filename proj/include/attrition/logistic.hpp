#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "attrition/domain.hpp"
#include "attrition/errors.hpp"
#include "attrition/matrix.hpp"

namespace attrition {

inline double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

namespace detail {

// log(1 + exp(t)) without overflow for large |t|
inline double softplus(double t) {
  return std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t)));
}

}  // namespace detail

/// Mean negative log-likelihood plus (lambda/2)*||w||^2; the bias is not
/// penalized.
inline double logistic_objective(const Matrix& x, std::span<const std::uint8_t> y,
                                 std::span<const double> w, double b, double lambda) {
  double nll = 0.0;
  for (std::size_t i = 0; i < x.rows; ++i) {
    const auto row = x.row(i);
    double z = b;
    for (std::size_t d = 0; d < x.cols; ++d) z += w[d] * row[d];
    const double m = (y[i] != 0) ? z : -z;
    nll += detail::softplus(-m);
  }
  nll /= static_cast<double>(x.rows);
  double penalty = 0.0;
  for (const double v : w) penalty += v * v;
  return nll + 0.5 * lambda * penalty;
}

inline void logistic_gradient(const Matrix& x, std::span<const std::uint8_t> y,
                              std::span<const double> w, double b, double lambda,
                              std::span<double> grad_w, double& grad_b) {
  std::fill(grad_w.begin(), grad_w.end(), 0.0);
  grad_b = 0.0;
  for (std::size_t i = 0; i < x.rows; ++i) {
    const auto row = x.row(i);
    double z = b;
    for (std::size_t d = 0; d < x.cols; ++d) z += w[d] * row[d];
    const double r = sigmoid(z) - (y[i] != 0 ? 1.0 : 0.0);
    for (std::size_t d = 0; d < x.cols; ++d) grad_w[d] += r * row[d];
    grad_b += r;
  }
  const double inv_n = 1.0 / static_cast<double>(x.rows);
  for (std::size_t d = 0; d < x.cols; ++d) grad_w[d] = grad_w[d] * inv_n + lambda * w[d];
  grad_b *= inv_n;
}

struct LogisticConfig {
  double l2_lambda = 1e-4;
  std::size_t max_iters = 500;
  double grad_tol = 1e-6;
  double threshold = 0.5;

  void validate() const {
    if (!(l2_lambda >= 0.0)) throw ConfigError("l2_lambda must be >= 0");
    if (max_iters < 1) throw ConfigError("max_iters must be >= 1");
    if (!(grad_tol > 0.0)) throw ConfigError("grad_tol must be > 0");
  }
};

struct LogisticModel {
  std::vector<double> weights;
  double bias = 0.0;
  double l2_lambda = 0.0;
  double threshold = 0.5;
  std::size_t iters = 0;
  double final_grad_norm = 0.0;
  bool converged = false;

  double predict_score(std::span<const double> x) const {
    double z = bias;
    for (std::size_t d = 0; d < x.size(); ++d) z += weights[d] * x[d];
    return sigmoid(z);
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

/// Full-batch gradient descent from the zero vector with Armijo
/// backtracking. The accepted step size carries over (doubled) into the next
/// iteration, so flat late-stage landscapes still make progress. Stops when
/// the gradient norm drops to grad_tol or the iteration budget runs out.
/// Deterministic: no random state anywhere.
inline LogisticModel fit_logistic(const Matrix& x, std::span<const std::uint8_t> y,
                                  const LogisticConfig& cfg = {}) {
  cfg.validate();
  if (x.rows == 0) throw DataError("empty data");
  if (x.rows != y.size()) throw ConfigError("label length mismatch");
  bool has_pos = false;
  bool has_neg = false;
  for (const std::uint8_t label : y) (label != 0 ? has_pos : has_neg) = true;
  if (!has_pos || !has_neg) throw DataError("degenerate labels: both classes required");

  LogisticModel model;
  model.weights.assign(x.cols, 0.0);
  model.l2_lambda = cfg.l2_lambda;
  model.threshold = cfg.threshold;

  std::vector<double> grad_w(x.cols, 0.0);
  std::vector<double> trial_w(x.cols, 0.0);
  double grad_b = 0.0;
  double objective = logistic_objective(x, y, model.weights, model.bias, cfg.l2_lambda);
  constexpr double kArmijo = 0.3;
  double step_init = 1.0;

  for (std::size_t iter = 0; iter < cfg.max_iters; ++iter) {
    logistic_gradient(x, y, model.weights, model.bias, cfg.l2_lambda, grad_w, grad_b);
    double sq = grad_b * grad_b;
    for (const double g : grad_w) sq += g * g;
    model.final_grad_norm = std::sqrt(sq);
    model.iters = iter;
    if (model.final_grad_norm <= cfg.grad_tol) {
      model.converged = true;
      return model;
    }

    double step = step_init;
    bool accepted = false;
    while (step >= 1e-14) {
      for (std::size_t d = 0; d < x.cols; ++d) {
        trial_w[d] = model.weights[d] - step * grad_w[d];
      }
      const double trial_b = model.bias - step * grad_b;
      const double trial_obj = logistic_objective(x, y, trial_w, trial_b, cfg.l2_lambda);
      if (trial_obj <= objective - kArmijo * step * sq) {
        model.weights = trial_w;
        model.bias = trial_b;
        objective = trial_obj;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // no descent step left at this precision
    step_init = std::min(step * 2.0, 1e12);
    model.iters = iter + 1;
  }

  logistic_gradient(x, y, model.weights, model.bias, cfg.l2_lambda, grad_w, grad_b);
  double sq = grad_b * grad_b;
  for (const double g : grad_w) sq += g * g;
  model.final_grad_norm = std::sqrt(sq);
  model.converged = model.final_grad_norm <= cfg.grad_tol;
  return model;
}

inline LogisticModel fit_logistic(const GradeMatrix& m, const LogisticConfig& cfg = {}) {
  return fit_logistic(m.values, m.labels, cfg);
}

}  // namespace attrition
