#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "robandit/envsim.hpp"

namespace robandit {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct CriticConfig {
  double zeta = 1e-3;  // ridge multiplier
  double tau = 1.0;    // scales the boxplot cap
  int max_iters = 50;
  bool capped = true;  // false: plain ridge critic
};

struct CriticFit {
  VectorXd w;
  VectorXd weights;    // entries in {0, 1}
  double epsilon = 0;  // +inf when uncapped
  int iters = 0;
  bool converged = false;
  std::vector<double> objective_trace;
};

/// Quantile with linear interpolation between order statistics: zero-based
/// position (n - 1) * q. `values` need not be sorted.
double quantile_linear(std::span<const double> values, double q);

/// tau * (q3 + 1.5 * (q3 - q1)) of the squared residuals. Needs >= 4 samples.
double compute_epsilon(std::span<const double> residuals_sq, double tau);

/// Design matrix with one reward-feature column per tuple (u x T).
MatrixXd design_matrix(const Trajectory& data);
VectorXd reward_vector(const Trajectory& data);

/// argmin_w sum_i weights_i (r_i - x_i'w)^2 + zeta |w|^2 via Cholesky of
/// X U X' + zeta I. X is u x T (samples are columns).
VectorXd weighted_ridge(const MatrixXd& X, const VectorXd& r, const VectorXd& weights, double zeta);

/// (r_i - x_i'w)^2 for each column of X.
VectorXd squared_residuals(const MatrixXd& X, const VectorXd& r, const VectorXd& w);

/// u_i = 1 iff the squared residual is strictly below epsilon.
VectorXd update_weights(const MatrixXd& X, const VectorXd& r, const VectorXd& w, double epsilon);

/// sum_i min(res_i^2, epsilon) + zeta |w|^2.
double capped_objective(const MatrixXd& X, const VectorXd& r, const VectorXd& w, double epsilon, double zeta);

/// Robust reward model: alternate weighted ridge solves and indicator
/// reweighting under a cap fixed from the initial all-ones fit.
CriticFit fit_critic(const Trajectory& data, const CriticConfig& cfg);
CriticFit fit_critic(const MatrixXd& X, const VectorXd& r, const CriticConfig& cfg);

}  // namespace robandit
