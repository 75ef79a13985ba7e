#include "robandit/config.hpp"

#include <algorithm>
#include <fstream>

#include "robandit/error.hpp"
#include "robandit/serialize.hpp"

namespace robandit {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& key, const std::string& why) {
  throw Error(ErrorCode::ConfigParse, "field '" + key + "': " + why);
}

double get_real(const json& j, const std::string& key, double current) {
  if (!j.contains(key)) return current;
  const auto& v = j.at(key);
  if (!v.is_number()) bad(key, "expected a number");
  return v.get<double>();
}

int get_int(const json& j, const std::string& key, int current) {
  if (!j.contains(key)) return current;
  const auto& v = j.at(key);
  if (!v.is_number_integer()) bad(key, "expected an integer");
  return v.get<int>();
}

std::vector<double> get_reals(const json& j, const std::string& key, std::vector<double> current) {
  if (!j.contains(key)) return current;
  const auto& v = j.at(key);
  if (!v.is_array()) bad(key, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) bad(key, "expected an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "beta", "p", "sigma_s", "sigma_r", "init_cov", "horizon_T",     // simulator
      "psi", "nu", "psis", "nus",                                     // contamination
      "zeta", "tau", "critic_max_iters",                              // critic
      "lambda", "actor_max_iters", "grad_tol",                        // actor
      "eval_horizon", "tail", "n_users", "base_seed", "alpha_ucb", "threads"};
  return keys;
}

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ConfigParse, "config must be a JSON object");
  const auto& keys = config_keys();
  for (const auto& [k, v] : j.items())
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) bad(k, "unknown key");

  RunConfig cfg;
  auto& sim = cfg.harness.sim;
  if (j.contains("beta")) {
    const auto beta = get_reals(j, "beta", {});
    if (beta.size() != 14) bad("beta", "expected exactly 14 entries, got " + std::to_string(beta.size()));
    std::copy(beta.begin(), beta.end(), sim.beta.begin());
  }
  sim.p = get_int(j, "p", sim.p);
  sim.sigma_s = get_real(j, "sigma_s", sim.sigma_s);
  sim.sigma_r = get_real(j, "sigma_r", sim.sigma_r);
  sim.horizon_T = get_int(j, "horizon_T", sim.horizon_T);
  if (sim.p < 3) bad("p", "must be >= 3");
  if (sim.horizon_T <= 0) bad("horizon_T", "must be positive");
  if (j.contains("init_cov")) {
    try {
      sim.init_cov = matrix_from_json(j.at("init_cov"));
    } catch (const Error& e) {
      bad("init_cov", e.what());
    }
  } else {
    sim.init_cov = Eigen::MatrixXd::Identity(sim.p, sim.p);
  }
  try {
    validate(sim);
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigParse, std::string("simulator: ") + e.what());
  }

  cfg.outliers.psi = get_real(j, "psi", cfg.outliers.psi);
  cfg.outliers.nu = get_real(j, "nu", cfg.outliers.nu);
  if (!(cfg.outliers.psi >= 0.0 && cfg.outliers.psi <= 1.0)) bad("psi", "must lie in [0, 1]");
  if (!(cfg.outliers.nu >= 0.0)) bad("nu", "must be >= 0");
  cfg.psis = get_reals(j, "psis", cfg.psis);
  cfg.nus = get_reals(j, "nus", cfg.nus);
  for (double v : cfg.psis)
    if (!(v >= 0.0 && v <= 1.0)) bad("psis", "entries must lie in [0, 1]");
  for (double v : cfg.nus)
    if (!(v >= 0.0)) bad("nus", "entries must be >= 0");

  auto& critic = cfg.harness.critic;
  critic.zeta = get_real(j, "zeta", critic.zeta);
  critic.tau = get_real(j, "tau", critic.tau);
  critic.max_iters = get_int(j, "critic_max_iters", critic.max_iters);
  if (!(critic.zeta > 0.0)) bad("zeta", "must be > 0");
  if (!(critic.tau > 0.0)) bad("tau", "must be > 0");
  if (critic.max_iters <= 0) bad("critic_max_iters", "must be positive");

  auto& actor = cfg.harness.actor;
  actor.lambda = get_real(j, "lambda", actor.lambda);
  actor.max_iters = get_int(j, "actor_max_iters", actor.max_iters);
  actor.grad_tol = get_real(j, "grad_tol", actor.grad_tol);
  if (!(actor.lambda >= 0.0)) bad("lambda", "must be >= 0");
  if (actor.max_iters <= 0) bad("actor_max_iters", "must be positive");
  if (!(actor.grad_tol > 0.0)) bad("grad_tol", "must be > 0");

  auto& ev = cfg.harness.eval;
  ev.eval_horizon = get_int(j, "eval_horizon", ev.eval_horizon);
  ev.tail = get_int(j, "tail", ev.tail);
  ev.n_users = get_int(j, "n_users", ev.n_users);
  if (j.contains("base_seed")) {
    const auto& v = j.at("base_seed");
    if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0))
      bad("base_seed", "expected a non-negative integer");
    ev.base_seed = v.get<std::uint64_t>();
  }
  try {
    validate(ev);
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigParse, std::string("evaluation: ") + e.what());
  }

  cfg.harness.alpha_ucb = get_real(j, "alpha_ucb", cfg.harness.alpha_ucb);
  if (!(cfg.harness.alpha_ucb >= 0.0)) bad("alpha_ucb", "must be >= 0");
  cfg.harness.threads = get_int(j, "threads", cfg.harness.threads);
  if (cfg.harness.threads <= 0) bad("threads", "must be positive");
  return cfg;
}

json config_to_json(const RunConfig& cfg) {
  json j = to_json(cfg.harness.sim);
  j["psi"] = cfg.outliers.psi;
  j["nu"] = cfg.outliers.nu;
  j["psis"] = cfg.psis;
  j["nus"] = cfg.nus;
  j["zeta"] = cfg.harness.critic.zeta;
  j["tau"] = cfg.harness.critic.tau;
  j["critic_max_iters"] = cfg.harness.critic.max_iters;
  j["lambda"] = cfg.harness.actor.lambda;
  j["actor_max_iters"] = cfg.harness.actor.max_iters;
  j["grad_tol"] = cfg.harness.actor.grad_tol;
  j["eval_horizon"] = cfg.harness.eval.eval_horizon;
  j["tail"] = cfg.harness.eval.tail;
  j["n_users"] = cfg.harness.eval.n_users;
  j["base_seed"] = cfg.harness.eval.base_seed;
  j["alpha_ucb"] = cfg.harness.alpha_ucb;
  j["threads"] = cfg.harness.threads;
  return j;
}

void apply_override(json& raw, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0)
    throw Error(ErrorCode::ConfigParse, "override '" + std::string(assignment) + "' is not key=value");
  const std::string key(assignment.substr(0, eq));
  const std::string text(assignment.substr(eq + 1));
  json value = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (value.is_discarded()) bad(key, "value '" + text + "' is not valid JSON");
  raw[key] = std::move(value);
}

json read_config_file(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigParse, "cannot open config file '" + path + "'");
  json j = json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw Error(ErrorCode::ConfigParse, "config file '" + path + "' is not valid JSON");
  return j;
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  json raw = read_config_file(path);
  for (const auto& o : overrides) apply_override(raw, o);
  return config_from_json(raw);
}

}  // namespace robandit
