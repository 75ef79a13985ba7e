#pragma once

#include <Eigen/Core>

#include "robandit/accb.hpp"
#include "robandit/envsim.hpp"
#include "robandit/features.hpp"

namespace robandit {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Disjoint linear UCB over the shared reward feature x(s, a).
struct LinUcbState {
  MatrixXd A;  // ridge_init * I + sum x x'
  VectorXd b;  // sum r x
  double alpha_ucb = 1.0;

  static LinUcbState fresh(Eigen::Index feature_dim, double alpha_ucb, double ridge_init = 1.0);
};

/// argmax_a x(s,a)'A^{-1}b + alpha * sqrt(x(s,a)'A^{-1}x(s,a)); ties go to a = 1.
int linucb_select(const LinUcbState& state, const VectorXd& s);

LinUcbState linucb_update(LinUcbState state, const VectorXd& s, int a, double r);

/// One online pass over the logged tuples.
LinUcbState linucb_train(const Trajectory& data, double alpha_ucb);

/// Frozen Lin-UCB rule with the Cholesky factor computed once.
class LinUcbPolicy {
 public:
  explicit LinUcbPolicy(const LinUcbState& state);
  int select(const VectorXd& s) const;
  double score(const VectorXd& s, int a) const;

 private:
  MatrixXd a_inv_;
  VectorXd coef_;
  double alpha_;
};

/// Uncapped critic, unweighted actor.
AccbFit fit_s_accb(const Trajectory& data, const CriticConfig& critic_cfg, const ActorConfig& actor_cfg);
PolicyParams fit_s_accb(const Trajectory& data, double zeta, double lambda);

}  // namespace robandit
