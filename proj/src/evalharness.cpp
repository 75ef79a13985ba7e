#include "robandit/evalharness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <memory>
#include <thread>

#include "robandit/accb.hpp"
#include "robandit/baselines.hpp"
#include "robandit/error.hpp"
#include "robandit/features.hpp"

namespace robandit {

namespace {

enum StreamTag : std::uint64_t { kTrain = 1, kContaminate = 2, kEvaluate = 3 };

template <class Fn>
void parallel_for(int n, int threads, Fn&& fn) {
  const int workers = std::clamp(threads, 1, std::max(n, 1));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  }
}

ActionProb boltzmann(const PolicyParams& params) {
  return [theta = params.theta](const VectorXd& s) { return prob_action1(theta.dot(policy_diff_feature(s))); };
}

}  // namespace

void validate(const EvalConfig& ec) {
  if (ec.eval_horizon <= 0) throw Error(ErrorCode::ConfigParse, "eval_horizon must be positive");
  if (ec.tail <= 0) throw Error(ErrorCode::ConfigParse, "tail must be positive");
  if (ec.tail > ec.eval_horizon) throw Error(ErrorCode::ConfigParse, "tail must not exceed eval_horizon");
  if (ec.n_users <= 0) throw Error(ErrorCode::ConfigParse, "n_users must be positive");
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::LinUCB: return "Lin-UCB";
    case Method::SACCB: return "S-ACCB";
    case Method::RSACCB: return "RS-ACCB";
  }
  return "?";
}

Method method_from_string(std::string_view name) {
  for (Method m : kAllMethods)
    if (to_string(m) == name) return m;
  throw Error(ErrorCode::ConfigParse, "unknown method '" + std::string(name) + "'");
}

double average_reward(const ActionProb& policy, const SimConfig& cfg, const EvalConfig& ec, Rng& rng) {
  validate(ec);
  auto draw = [&](const VectorXd& s) { return uniform01(rng) < policy(s) ? 1 : 0; };

  VectorXd s = init_state(cfg, rng);
  int a = draw(s);
  const int first_kept = ec.eval_horizon - ec.tail;
  double sum = 0.0;
  double r = reward(cfg, s, a, rng);
  if (first_kept == 0) sum += r;
  for (int t = 1; t < ec.eval_horizon; ++t) {
    s = transition(cfg, s, a, rng);
    a = draw(s);
    r = reward(cfg, s, a, rng);
    if (t >= first_kept) sum += r;
  }
  return sum / static_cast<double>(ec.tail);
}

Elrar elrar(std::span<const double> etas) {
  if (etas.size() < 2)
    throw Error(ErrorCode::InsufficientUsers, "need at least 2 users for a standard deviation, got " +
                                                  std::to_string(etas.size()));
  const double n = static_cast<double>(etas.size());
  double mean = 0.0;
  for (double e : etas) mean += e;
  mean /= n;
  double ss = 0.0;
  for (double e : etas) ss += (e - mean) * (e - mean);
  return {mean, std::sqrt(ss / (n - 1.0))};
}

UserSeeds user_seeds(std::uint64_t base_seed, int user) {
  const auto u = static_cast<std::uint64_t>(user);
  return {derive_seed(base_seed, {u, kTrain}), derive_seed(base_seed, {u, kContaminate}),
          derive_seed(base_seed, {u, kEvaluate})};
}

Trajectory training_data(const SimConfig& cfg, const OutlierConfig& oc, std::uint64_t base_seed, int user) {
  const UserSeeds seeds = user_seeds(base_seed, user);
  Rng train_rng(seeds.train);
  Trajectory clean = generate_trajectory(cfg, train_rng);
  Rng contaminate_rng(seeds.contaminate);
  return inject_outliers(clean, oc, contaminate_rng);
}

ActionProb train_policy(Method method, const Trajectory& data, const HarnessConfig& hc) {
  switch (method) {
    case Method::LinUCB: {
      auto rule = std::make_shared<LinUcbPolicy>(linucb_train(data, hc.alpha_ucb));
      return [rule](const VectorXd& s) { return rule->select(s) == 1 ? 1.0 : 0.0; };
    }
    case Method::SACCB:
      return boltzmann(fit_s_accb(data, hc.critic, hc.actor).actor.params);
    case Method::RSACCB:
      return boltzmann(fit_rs_accb(data, hc.critic, hc.actor).actor.params);
  }
  throw Error(ErrorCode::ConfigParse, "unknown method");
}

ConditionResult run_condition(Method method, const OutlierConfig& oc, const HarnessConfig& hc) {
  validate(hc.sim);
  validate(oc);
  validate(hc.eval);

  ConditionResult res;
  res.method = method;
  res.users.resize(static_cast<std::size_t>(hc.eval.n_users));

  parallel_for(hc.eval.n_users, hc.threads, [&](int user) {
    UserOutcome& out = res.users[static_cast<std::size_t>(user)];
    try {
      const Trajectory data = training_data(hc.sim, oc, hc.eval.base_seed, user);
      const ActionProb policy = train_policy(method, data, hc);
      Rng eval_rng(user_seeds(hc.eval.base_seed, user).evaluate);
      out.eta = average_reward(policy, hc.sim, hc.eval, eval_rng);
    } catch (const std::exception& e) {
      out.error = e.what();
    }
  });

  std::vector<double> etas;
  for (const auto& u : res.users)
    if (u.eta) etas.push_back(*u.eta);
  res.n_users = static_cast<int>(etas.size());
  if (etas.size() >= 2) {
    const Elrar e = elrar(etas);
    res.mean = e.mean;
    res.std = e.std;
  } else {
    res.mean = etas.empty() ? std::numeric_limits<double>::quiet_NaN() : etas.front();
    res.std = std::numeric_limits<double>::quiet_NaN();
  }
  return res;
}

namespace {

ExperimentReport run_sweep(std::string setting, std::string axis_name, std::span<const double> axis,
                           bool vary_psi, double fixed, const HarnessConfig& hc) {
  ExperimentReport rep;
  rep.setting = std::move(setting);
  rep.axis_name = std::move(axis_name);
  rep.base_seed = hc.eval.base_seed;
  rep.fixed_psi = vary_psi ? std::numeric_limits<double>::quiet_NaN() : fixed;
  rep.fixed_nu = vary_psi ? fixed : std::numeric_limits<double>::quiet_NaN();
  for (double v : axis) {
    const OutlierConfig oc = vary_psi ? OutlierConfig{v, fixed} : OutlierConfig{fixed, v};
    ReportRow row;
    row.axis_value = v;
    for (Method m : kAllMethods) row.cells.push_back(run_condition(m, oc, hc));
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace

ExperimentReport run_sweep_s1(std::span<const double> psis, double nu, const HarnessConfig& hc) {
  return run_sweep("S1", "psi", psis, true, nu, hc);
}

ExperimentReport run_sweep_s2(std::span<const double> nus, double psi, const HarnessConfig& hc) {
  return run_sweep("S2", "nu", nus, false, psi, hc);
}

}  // namespace robandit
