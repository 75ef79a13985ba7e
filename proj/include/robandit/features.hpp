#pragma once

#include <Eigen/Core>

namespace robandit {

using Eigen::VectorXd;

/// Boltzmann policy coefficients over the policy feature g(s, a), length p + 1.
struct PolicyParams {
  VectorXd theta;
};

/// x(s, a) = [1, s, a, a*s], length 2p + 2.
VectorXd reward_feature(const VectorXd& s, int a);

/// g(s, a) = [a*s, a], length p + 1. Zero when a == 0.
VectorXd policy_feature(const VectorXd& s, int a);

/// g(s, 1) - g(s, 0) = [s, 1].
VectorXd policy_diff_feature(const VectorXd& s);

/// pi(1|s) for energy z = theta' g(s, 1) under pi(a|s) ∝ exp(-theta' g(s, a)).
/// Stable for |z| large: saturates to 0 or 1 without producing NaN.
double prob_action1(double energy);

/// pi_theta(a | s) under the negative-exponent Boltzmann convention.
double policy_prob(const PolicyParams& params, const VectorXd& s, int a);

/// d log pi_theta(a|s) / d theta.
VectorXd policy_log_grad(const PolicyParams& params, const VectorXd& s, int a);

}  // namespace robandit
