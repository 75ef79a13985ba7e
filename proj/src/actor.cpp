#include "robandit/actor.hpp"

#include <cmath>
#include <string>

#include "robandit/error.hpp"

namespace robandit {

namespace {

void check_shapes(const VectorXd& theta, const ActorProblem& prob) {
  const Eigen::Index T = prob.diff_features.cols();
  if (prob.advantage.size() != T || prob.baseline.size() != T || prob.weights.size() != T)
    throw Error(ErrorCode::ShapeMismatch, "actor problem: per-tuple vectors must have length T");
  if (theta.size() != prob.diff_features.rows())
    throw Error(ErrorCode::ShapeMismatch, "theta has length " + std::to_string(theta.size()) + ", expected " +
                                              std::to_string(prob.diff_features.rows()));
}

}  // namespace

ActorProblem make_actor_problem(const Trajectory& data, const VectorXd& weights, const VectorXd& w, double lambda) {
  const auto T = static_cast<Eigen::Index>(data.size());
  if (weights.size() != T) throw Error(ErrorCode::ShapeMismatch, "weights length differs from trajectory length");
  ActorProblem prob;
  prob.lambda = lambda;
  prob.weights = weights;
  if (T == 0) return prob;

  const Eigen::Index p = data.tuples.front().state.size();
  if (w.size() != 2 * p + 2)
    throw Error(ErrorCode::ShapeMismatch, "critic coefficients have length " + std::to_string(w.size()) +
                                              ", expected " + std::to_string(2 * p + 2));
  prob.diff_features.resize(p + 1, T);
  prob.advantage.resize(T);
  prob.baseline.resize(T);
  for (Eigen::Index i = 0; i < T; ++i) {
    const VectorXd& s = data.tuples[static_cast<std::size_t>(i)].state;
    if (s.size() != p) throw Error(ErrorCode::ShapeMismatch, "inconsistent state dimension");
    prob.diff_features.col(i) = policy_diff_feature(s);
    // x(s,0)'w = w0 + s'w_s ; x(s,1)'w - x(s,0)'w = w_a + s'w_as.
    prob.baseline[i] = w[0] + s.dot(w.segment(1, p));
    prob.advantage[i] = w[p + 1] + s.dot(w.tail(p));
  }
  return prob;
}

double actor_objective(const VectorXd& theta, const ActorProblem& prob) {
  check_shapes(theta, prob);
  const Eigen::Index T = prob.diff_features.cols();
  if (T == 0) return 0.0;
  double reward_term = 0.0;
  double penalty = 0.0;
  for (Eigen::Index i = 0; i < T; ++i) {
    const double u = prob.weights[i];
    if (u == 0.0) continue;
    const double z = theta.dot(prob.diff_features.col(i));
    reward_term += u * (prob.baseline[i] + prob_action1(z) * prob.advantage[i]);
    penalty += u * z * z;
  }
  const double invT = 1.0 / static_cast<double>(T);
  return invT * reward_term - prob.lambda * invT * penalty;
}

VectorXd actor_gradient(const VectorXd& theta, const ActorProblem& prob) {
  check_shapes(theta, prob);
  const Eigen::Index T = prob.diff_features.cols();
  VectorXd grad = VectorXd::Zero(theta.size());
  if (T == 0) return grad;
  for (Eigen::Index i = 0; i < T; ++i) {
    const double u = prob.weights[i];
    if (u == 0.0) continue;
    const auto g = prob.diff_features.col(i);
    const double z = theta.dot(g);
    const double p1 = prob_action1(z);
    const double p0 = prob_action1(-z);
    // d pi(1)/d theta = -pi(1) pi(0) g ; d (z^2)/d theta = 2 z g.
    grad += u * (-prob.advantage[i] * p1 * p0 - 2.0 * prob.lambda * z) * g;
  }
  return grad / static_cast<double>(T);
}

double actor_objective(const PolicyParams& theta, const Trajectory& data, const VectorXd& weights, const VectorXd& w,
                       double lambda) {
  return actor_objective(theta.theta, make_actor_problem(data, weights, w, lambda));
}

VectorXd actor_gradient(const PolicyParams& theta, const Trajectory& data, const VectorXd& weights,
                        const VectorXd& w, double lambda) {
  return actor_gradient(theta.theta, make_actor_problem(data, weights, w, lambda));
}

ActorFit fit_actor(const ActorProblem& prob, const ActorConfig& cfg) {
  const Eigen::Index m = prob.diff_features.rows();
  VectorXd x = cfg.theta_init.size() == 0 ? VectorXd::Zero(m) : cfg.theta_init;
  check_shapes(x, prob);

  // Minimize f = -J.
  double f = -actor_objective(x, prob);
  VectorXd g = -actor_gradient(x, prob);
  if (!std::isfinite(f) || !g.allFinite())
    throw Error(ErrorCode::NonFiniteObjective, "actor objective is not finite at the initial point");

  ActorFit fit;
  MatrixXd H = MatrixXd::Identity(m, m);
  bool scaled = false;
  constexpr double kArmijo = 1e-4;
  constexpr int kMaxHalvings = 60;

  while (true) {
    if (g.lpNorm<Eigen::Infinity>() <= cfg.grad_tol) {
      fit.converged = true;
      break;
    }
    if (fit.iters >= cfg.max_iters) break;

    VectorXd d = -H * g;
    double slope = g.dot(d);
    if (!(slope < 0.0)) {
      H.setIdentity();
      d = -g;
      slope = -g.squaredNorm();
    }

    double alpha = 1.0;
    double f_new = 0.0;
    VectorXd x_new;
    bool accepted = false;
    for (int h = 0; h < kMaxHalvings; ++h, alpha *= 0.5) {
      x_new = x + alpha * d;
      f_new = -actor_objective(x_new, prob);
      if (std::isfinite(f_new) && f_new <= f + kArmijo * alpha * slope) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;

    VectorXd g_new = -actor_gradient(x_new, prob);
    if (!g_new.allFinite()) throw Error(ErrorCode::NonFiniteObjective, "actor gradient became non-finite");
    const VectorXd s = x_new - x;
    const VectorXd y = g_new - g;
    const double ys = y.dot(s);
    if (ys > 1e-12 * s.norm() * y.norm()) {
      if (!scaled) {
        H *= ys / y.squaredNorm();
        scaled = true;
      }
      const double rho = 1.0 / ys;
      const MatrixXd I = MatrixXd::Identity(m, m);
      H = (I - rho * s * y.transpose()) * H * (I - rho * y * s.transpose()) + rho * s * s.transpose();
    }
    x = std::move(x_new);
    f = f_new;
    g = std::move(g_new);
    ++fit.iters;
  }

  fit.params.theta = x;
  fit.objective = -f;
  return fit;
}

ActorFit fit_actor(const Trajectory& data, const VectorXd& weights, const VectorXd& w, const ActorConfig& cfg) {
  return fit_actor(make_actor_problem(data, weights, w, cfg.lambda), cfg);
}

}  // namespace robandit
