#include "robandit/baselines.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>

namespace robandit {

LinUcbState LinUcbState::fresh(Eigen::Index feature_dim, double alpha_ucb, double ridge_init) {
  LinUcbState st;
  st.A = ridge_init * MatrixXd::Identity(feature_dim, feature_dim);
  st.b = VectorXd::Zero(feature_dim);
  st.alpha_ucb = alpha_ucb;
  return st;
}

LinUcbPolicy::LinUcbPolicy(const LinUcbState& state) : alpha_(state.alpha_ucb) {
  Eigen::LLT<MatrixXd> llt(state.A);
  a_inv_ = llt.solve(MatrixXd::Identity(state.A.rows(), state.A.cols()));
  coef_ = llt.solve(state.b);
}

double LinUcbPolicy::score(const VectorXd& s, int a) const {
  const VectorXd x = reward_feature(s, a);
  return x.dot(coef_) + alpha_ * std::sqrt(std::max(0.0, x.dot(a_inv_ * x)));
}

int LinUcbPolicy::select(const VectorXd& s) const { return score(s, 1) >= score(s, 0) ? 1 : 0; }

int linucb_select(const LinUcbState& state, const VectorXd& s) { return LinUcbPolicy(state).select(s); }

LinUcbState linucb_update(LinUcbState state, const VectorXd& s, int a, double r) {
  const VectorXd x = reward_feature(s, a);
  state.A.noalias() += x * x.transpose();
  state.b += r * x;
  return state;
}

LinUcbState linucb_train(const Trajectory& data, double alpha_ucb) {
  const Eigen::Index p = data.empty() ? 0 : data.tuples.front().state.size();
  LinUcbState st = LinUcbState::fresh(2 * p + 2, alpha_ucb);
  for (const auto& tu : data.tuples) st = linucb_update(std::move(st), tu.state, tu.action, tu.reward);
  return st;
}

AccbFit fit_s_accb(const Trajectory& data, const CriticConfig& critic_cfg, const ActorConfig& actor_cfg) {
  CriticConfig cc = critic_cfg;
  cc.capped = false;
  return fit_accb(data, cc, actor_cfg);
}

PolicyParams fit_s_accb(const Trajectory& data, double zeta, double lambda) {
  CriticConfig cc;
  cc.zeta = zeta;
  ActorConfig ac;
  ac.lambda = lambda;
  return fit_s_accb(data, cc, ac).actor.params;
}

}  // namespace robandit
