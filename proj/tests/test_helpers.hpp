#pragma once

#include <cmath>

#include <Eigen/Core>

#include "robandit/envsim.hpp"

namespace robandit::testing {

/// Paper-default simulator with every noise source switched off.
inline SimConfig noiseless(int p = 3) {
  SimConfig cfg;
  cfg.p = p;
  cfg.sigma_s = 0.0;
  cfg.sigma_r = 0.0;
  cfg.init_cov = Eigen::MatrixXd::Zero(p, p);
  return cfg;
}

inline bool bit_equal(const Trajectory& a, const Trajectory& b) {
  if (a.size() != b.size() || a.outlier_mask != b.outlier_mask) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& x = a.tuples[i];
    const auto& y = b.tuples[i];
    if (x.action != y.action || x.reward != y.reward || x.state.size() != y.state.size()) return false;
    for (Eigen::Index j = 0; j < x.state.size(); ++j)
      if (x.state[j] != y.state[j]) return false;
  }
  return true;
}

}  // namespace robandit::testing
