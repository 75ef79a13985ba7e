#include "robandit/critic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Cholesky>

#include "robandit/error.hpp"
#include "robandit/features.hpp"

namespace robandit {

double quantile_linear(std::span<const double> values, double q) {
  if (values.empty()) throw Error(ErrorCode::InsufficientSamplesForQuantiles, "empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double pos = static_cast<double>(sorted.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double compute_epsilon(std::span<const double> residuals_sq, double tau) {
  if (residuals_sq.size() < 4)
    throw Error(ErrorCode::InsufficientSamplesForQuantiles,
                "need at least 4 residuals, got " + std::to_string(residuals_sq.size()));
  const double q1 = quantile_linear(residuals_sq, 0.25);
  const double q3 = quantile_linear(residuals_sq, 0.75);
  return tau * (q3 + 1.5 * (q3 - q1));
}

MatrixXd design_matrix(const Trajectory& data) {
  if (data.empty()) return {};
  const Eigen::Index p = data.tuples.front().state.size();
  MatrixXd X(2 * p + 2, static_cast<Eigen::Index>(data.size()));
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& tu = data.tuples[i];
    X.col(static_cast<Eigen::Index>(i)) = reward_feature(tu.state, tu.action);
  }
  return X;
}

VectorXd reward_vector(const Trajectory& data) {
  VectorXd r(static_cast<Eigen::Index>(data.size()));
  for (std::size_t i = 0; i < data.size(); ++i) r[static_cast<Eigen::Index>(i)] = data.tuples[i].reward;
  return r;
}

VectorXd weighted_ridge(const MatrixXd& X, const VectorXd& r, const VectorXd& weights, double zeta) {
  if (X.cols() != r.size() || X.cols() != weights.size())
    throw Error(ErrorCode::ShapeMismatch, "weighted_ridge: X, r and weights disagree on T");
  if (!X.allFinite() || !r.allFinite() || !weights.allFinite() || !std::isfinite(zeta))
    throw Error(ErrorCode::NonFiniteInput, "weighted_ridge received a non-finite value");
  if (!(zeta > 0.0)) throw Error(ErrorCode::NonFiniteInput, "weighted_ridge requires zeta > 0");

  const Eigen::Index u = X.rows();
  MatrixXd gram = zeta * MatrixXd::Identity(u, u);
  gram.selfadjointView<Eigen::Lower>().rankUpdate(X * weights.cwiseSqrt().asDiagonal());
  const VectorXd rhs = X * weights.cwiseProduct(r);
  Eigen::LLT<MatrixXd> llt(gram.selfadjointView<Eigen::Lower>());
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::NonFiniteInput, "weighted_ridge: Gram not SPD");
  return llt.solve(rhs);
}

VectorXd squared_residuals(const MatrixXd& X, const VectorXd& r, const VectorXd& w) {
  return (r - X.transpose() * w).array().square().matrix();
}

VectorXd update_weights(const MatrixXd& X, const VectorXd& r, const VectorXd& w, double epsilon) {
  const VectorXd res2 = squared_residuals(X, r, w);
  return (res2.array() < epsilon).cast<double>().matrix();
}

double capped_objective(const MatrixXd& X, const VectorXd& r, const VectorXd& w, double epsilon, double zeta) {
  const VectorXd res2 = squared_residuals(X, r, w);
  return res2.array().min(epsilon).sum() + zeta * w.squaredNorm();
}

CriticFit fit_critic(const MatrixXd& X, const VectorXd& r, const CriticConfig& cfg) {
  const Eigen::Index T = X.cols();
  if (T < 1) throw Error(ErrorCode::InsufficientSamplesForQuantiles, "fit_critic: empty data");

  CriticFit fit;
  fit.weights = VectorXd::Ones(T);
  fit.w = weighted_ridge(X, r, fit.weights, cfg.zeta);

  if (!cfg.capped) {
    fit.epsilon = std::numeric_limits<double>::infinity();
    fit.iters = 1;
    fit.converged = true;
    fit.objective_trace.push_back(capped_objective(X, r, fit.w, fit.epsilon, cfg.zeta));
    return fit;
  }

  const VectorXd res2 = squared_residuals(X, r, fit.w);
  fit.epsilon = compute_epsilon(std::span<const double>(res2.data(), static_cast<std::size_t>(res2.size())), cfg.tau);
  if (!(fit.epsilon > 0.0)) {
    throw Error(ErrorCode::AllSamplesCapped, "cap is zero; every residual would be excluded");
  }
  fit.objective_trace.push_back(capped_objective(X, r, fit.w, fit.epsilon, cfg.zeta));

  while (fit.iters < cfg.max_iters) {
    VectorXd next = update_weights(X, r, fit.w, fit.epsilon);
    ++fit.iters;
    if (next.sum() == 0.0) throw Error(ErrorCode::AllSamplesCapped, "every sample exceeds the cap");
    if (next == fit.weights) {
      fit.converged = true;
      break;
    }
    fit.weights = std::move(next);
    fit.w = weighted_ridge(X, r, fit.weights, cfg.zeta);
    fit.objective_trace.push_back(capped_objective(X, r, fit.w, fit.epsilon, cfg.zeta));
  }
  return fit;
}

CriticFit fit_critic(const Trajectory& data, const CriticConfig& cfg) {
  if (cfg.capped && data.size() < 4)
    throw Error(ErrorCode::InsufficientSamplesForQuantiles, "capped critic needs at least 4 tuples");
  return fit_critic(design_matrix(data), reward_vector(data), cfg);
}

}  // namespace robandit
