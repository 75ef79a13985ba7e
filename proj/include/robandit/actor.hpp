#pragma once

#include <Eigen/Core>

#include "robandit/envsim.hpp"
#include "robandit/features.hpp"

namespace robandit {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct ActorConfig {
  double lambda = 1e-3;  // stochasticity penalty multiplier
  int max_iters = 200;
  double grad_tol = 1e-8;
  VectorXd theta_init;   // empty means zero
};

/// Sample-level ingredients of the weighted actor objective.
///
/// For tuple i: the expected reward of action a under the critic is
/// baseline_i + a * advantage_i, and diff_features.col(i) = g(s_i).
/// Tuples with weight 0 are skipped entirely, so their content never
/// reaches the objective.
struct ActorProblem {
  MatrixXd diff_features;  // m x T
  VectorXd advantage;      // T
  VectorXd baseline;       // T
  VectorXd weights;        // T
  double lambda = 0.0;
};

/// Builds the problem from logged states and a critic's reward coefficients.
/// Both actions are evaluated counterfactually at every logged state.
ActorProblem make_actor_problem(const Trajectory& data, const VectorXd& weights, const VectorXd& w, double lambda);

double actor_objective(const VectorXd& theta, const ActorProblem& prob);
VectorXd actor_gradient(const VectorXd& theta, const ActorProblem& prob);

double actor_objective(const PolicyParams& theta, const Trajectory& data, const VectorXd& weights, const VectorXd& w,
                       double lambda);
VectorXd actor_gradient(const PolicyParams& theta, const Trajectory& data, const VectorXd& weights,
                        const VectorXd& w, double lambda);

struct ActorFit {
  PolicyParams params;
  double objective = 0.0;
  int iters = 0;
  bool converged = false;
};

/// BFGS ascent with Armijo backtracking. Returns the best iterate seen; when
/// the line search stalls before the gradient test passes, converged is false.
ActorFit fit_actor(const ActorProblem& prob, const ActorConfig& cfg);
ActorFit fit_actor(const Trajectory& data, const VectorXd& weights, const VectorXd& w, const ActorConfig& cfg);

}  // namespace robandit
