#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "robandit/random.hpp"

namespace robandit {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Coefficients and noise scales of the simulated micro-randomized trial.
///
/// beta[0..13] hold the 14 dynamics/reward coefficients in order. The state
/// transition reads coordinates 1..3 explicitly, so p >= 3.
struct SimConfig {
  std::array<double, 14> beta{0.4, 0.3, 0.4, 0.7, 0.05, 0.6, 0.25, 3.0, 0.25, 0.25, 0.4, 0.1, 0.5, 500.0};
  int p = 3;
  double sigma_s = 1.0;
  double sigma_r = 3.0;
  MatrixXd init_cov = MatrixXd::Identity(3, 3);
  int horizon_T = 210;
};

/// Throws Error(ConfigParse) when cfg violates its invariants.
void validate(const SimConfig& cfg);

struct Tuple {
  VectorXd state;
  int action = 0;
  double reward = 0.0;
};

struct Trajectory {
  std::vector<Tuple> tuples;
  /// Diagnostic only: learners never read this.
  std::vector<bool> outlier_mask;

  std::size_t size() const { return tuples.size(); }
  bool empty() const { return tuples.empty(); }
};

struct OutlierConfig {
  double psi = 0.04;
  double nu = 5.0;
};

void validate(const OutlierConfig& oc);

/// Draw S0 ~ N(0, init_cov). Works for singular (PSD) covariances.
VectorXd init_state(const SimConfig& cfg, Rng& rng);

/// Next state given the previous state and previous action.
VectorXd transition(const SimConfig& cfg, const VectorXd& prev_state, int prev_action, Rng& rng);

/// Immediate reward for the current state and current action.
double reward(const SimConfig& cfg, const VectorXd& state, int action, Rng& rng);

/// One transition followed by the reward of `action` in the new state.
/// State noise is drawn before reward noise.
std::pair<VectorXd, double> step(const SimConfig& cfg, const VectorXd& prev_state, int prev_action, int action,
                                 Rng& rng);

/// Trajectory of horizon_T tuples under the uniform logging policy.
Trajectory generate_trajectory(const SimConfig& cfg, Rng& rng);

/// Contaminates floor(psi * T) tuples chosen uniformly without replacement.
///
/// Chosen tuples get reward += nu * mean|r| and state_j += nu * mean|s_j|
/// (means over the input trajectory) and a freshly drawn fair-coin action.
/// Every other tuple is copied unchanged.
Trajectory inject_outliers(const Trajectory& traj, const OutlierConfig& oc, Rng& rng);

/// CSV with header `t,s1..sp,a,r,outlier`.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
Trajectory read_trajectory_csv(std::istream& is);

}  // namespace robandit
