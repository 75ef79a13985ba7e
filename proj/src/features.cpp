#include "robandit/features.hpp"

#include <cmath>

namespace robandit {

VectorXd reward_feature(const VectorXd& s, int a) {
  const Eigen::Index p = s.size();
  VectorXd x(2 * p + 2);
  x[0] = 1.0;
  x.segment(1, p) = s;
  x[p + 1] = a;
  x.tail(p) = static_cast<double>(a) * s;
  return x;
}

VectorXd policy_feature(const VectorXd& s, int a) {
  const Eigen::Index p = s.size();
  VectorXd g(p + 1);
  g.head(p) = static_cast<double>(a) * s;
  g[p] = a;
  return g;
}

VectorXd policy_diff_feature(const VectorXd& s) {
  const Eigen::Index p = s.size();
  VectorXd g(p + 1);
  g.head(p) = s;
  g[p] = 1.0;
  return g;
}

double prob_action1(double energy) {
  // pi(1) = exp(-z) / (1 + exp(-z)); branch so exp never overflows.
  if (energy >= 0.0) {
    const double e = std::exp(-energy);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(energy));
}

double policy_prob(const PolicyParams& params, const VectorXd& s, int a) {
  const double z = params.theta.dot(policy_diff_feature(s));
  const double p1 = prob_action1(z);
  // pi(0) computed directly, not as 1 - p1, to keep precision at saturation.
  return a == 1 ? p1 : prob_action1(-z);
}

VectorXd policy_log_grad(const PolicyParams& params, const VectorXd& s, int a) {
  // log pi(a) = -theta'g(s,a) - logsumexp; gradient = -g(s,a) + E_pi[g(s,.)].
  const VectorXd g1 = policy_diff_feature(s);
  const double p1 = prob_action1(params.theta.dot(g1));
  return (p1 - static_cast<double>(a)) * g1;
}

}  // namespace robandit
