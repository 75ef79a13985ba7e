#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "robandit/actor.hpp"
#include "robandit/critic.hpp"
#include "robandit/envsim.hpp"

namespace robandit {

using Eigen::VectorXd;

struct EvalConfig {
  int eval_horizon = 5000;
  int tail = 4000;
  int n_users = 50;
  std::uint64_t base_seed = 0;
};

void validate(const EvalConfig& ec);

enum class Method { LinUCB, SACCB, RSACCB };

inline constexpr Method kAllMethods[] = {Method::LinUCB, Method::SACCB, Method::RSACCB};

std::string_view to_string(Method m);
Method method_from_string(std::string_view name);

/// Maps a state to the probability of choosing action 1. Deterministic
/// rules return exactly 0 or 1.
using ActionProb = std::function<double(const VectorXd&)>;

/// Rolls an outlier-free trajectory of eval_horizon steps under `policy` and
/// averages the rewards of the final `tail` steps.
double average_reward(const ActionProb& policy, const SimConfig& cfg, const EvalConfig& ec, Rng& rng);

struct Elrar {
  double mean = 0.0;
  double std = 0.0;
};

/// Mean and sample standard deviation (N - 1 denominator) across users.
Elrar elrar(std::span<const double> per_user_etas);

/// Everything a sweep cell needs besides the method and contamination.
struct HarnessConfig {
  SimConfig sim;
  CriticConfig critic;
  ActorConfig actor;
  EvalConfig eval;
  double alpha_ucb = 1.0;
  int threads = 1;
};

/// Seeds for one user. Independent of method and condition so every cell of
/// a sweep shares the same clean trajectories and evaluation noise.
struct UserSeeds {
  std::uint64_t train;
  std::uint64_t contaminate;
  std::uint64_t evaluate;
};
UserSeeds user_seeds(std::uint64_t base_seed, int user);

/// The contaminated training trajectory user `user` sees under `oc`.
Trajectory training_data(const SimConfig& cfg, const OutlierConfig& oc, std::uint64_t base_seed, int user);

/// Trains `method` on `data` and returns its deployment policy.
ActionProb train_policy(Method method, const Trajectory& data, const HarnessConfig& hc);

struct UserOutcome {
  std::optional<double> eta;
  std::string error;  // nonempty when training failed
};

struct ConditionResult {
  Method method = Method::RSACCB;
  double mean = 0.0;
  double std = 0.0;  // NaN when fewer than two users succeeded
  int n_users = 0;   // users that produced an eta
  std::vector<UserOutcome> users;
};

/// Trains and evaluates `method` for every user under contamination `oc`.
ConditionResult run_condition(Method method, const OutlierConfig& oc, const HarnessConfig& hc);

struct ReportRow {
  double axis_value = 0.0;
  std::vector<ConditionResult> cells;  // one per method, in kAllMethods order
};

struct ExperimentReport {
  std::string setting;    // "S1" or "S2"
  std::string axis_name;  // "psi" or "nu"
  double fixed_psi = 0.0;
  double fixed_nu = 0.0;
  std::uint64_t base_seed = 0;
  std::vector<ReportRow> rows;
};

/// Varies psi with nu fixed.
ExperimentReport run_sweep_s1(std::span<const double> psis, double nu, const HarnessConfig& hc);
/// Varies nu with psi fixed.
ExperimentReport run_sweep_s2(std::span<const double> nus, double psi, const HarnessConfig& hc);

}  // namespace robandit
