#include "robandit/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "robandit/accb.hpp"
#include "robandit/baselines.hpp"
#include "robandit/error.hpp"
#include "robandit/report.hpp"
#include "robandit/serialize.hpp"

namespace robandit {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::ConfigParse, "cannot write '" + path.string() + "'");
  f << text;
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

void write_report(const fs::path& dir, const std::string& stem, const ExperimentReport& rep, std::ostream& out) {
  std::ostringstream csv, md;
  write_report_csv(csv, rep);
  write_report_markdown(md, rep);
  write_text(dir / (stem + ".csv"), csv.str());
  write_text(dir / (stem + ".md"), md.str());
  write_json(dir / (stem + ".json"), report_to_json(rep));
  out << md.str();
}

}  // namespace

RunConfig resolve_config(const RunSpec& spec) {
  json raw = read_config_file(spec.config_path);
  for (const auto& o : spec.overrides) apply_override(raw, o);
  if (spec.users) raw["n_users"] = *spec.users;
  if (spec.psi) raw["psi"] = *spec.psi;
  if (spec.nu) raw["nu"] = *spec.nu;
  if (spec.horizon) raw["horizon_T"] = *spec.horizon;
  if (spec.threads) raw["threads"] = *spec.threads;
  if (spec.seed) {
    raw["base_seed"] = *spec.seed;
  } else if (const char* env = std::getenv("ROBANDIT_SEED"); env && *env) {
    char* end = nullptr;
    const unsigned long long s = std::strtoull(env, &end, 10);
    if (*end != '\0') throw Error(ErrorCode::ConfigParse, "ROBANDIT_SEED is not an unsigned integer");
    raw["base_seed"] = static_cast<std::uint64_t>(s);
  }
  return config_from_json(raw);
}

int run_command(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  const auto started = std::chrono::steady_clock::now();
  try {
    const RunConfig cfg = resolve_config(spec);
    const fs::path dir(spec.out_dir.empty() ? "." : spec.out_dir);
    fs::create_directories(dir);
    const auto& hc = cfg.harness;

    if (spec.command == "sweep-s1") {
      write_report(dir, "s1", run_sweep_s1(cfg.psis, cfg.outliers.nu, hc), out);
    } else if (spec.command == "sweep-s2") {
      write_report(dir, "s2", run_sweep_s2(cfg.nus, cfg.outliers.psi, hc), out);
    } else if (spec.command == "fit-one") {
      if (spec.user < 0) throw Error(ErrorCode::ConfigParse, "--user must be >= 0");
      const Trajectory data = training_data(hc.sim, cfg.outliers, hc.eval.base_seed, spec.user);
      int flagged = 0;
      for (bool b : data.outlier_mask) flagged += b ? 1 : 0;
      const AccbFit robust = fit_rs_accb(data, hc.critic, hc.actor);
      const AccbFit plain = fit_s_accb(data, hc.critic, hc.actor);
      json j{{"user", spec.user},
             {"n_tuples", data.size()},
             {"n_outliers", flagged},
             {"rs_accb", {{"critic", to_json(robust.critic)}, {"theta", to_json(robust.actor.params.theta)},
                          {"actor_converged", robust.actor.converged}}},
             {"s_accb", {{"critic", to_json(plain.critic)}, {"theta", to_json(plain.actor.params.theta)},
                         {"actor_converged", plain.actor.converged}}}};
      write_json(dir / "fit_one.json", j);
      out << "epsilon " << number(robust.critic.epsilon) << ", zeroed "
          << (robust.critic.weights.size() - static_cast<Eigen::Index>(robust.critic.weights.sum())) << " of "
          << data.size() << " tuples (" << flagged << " contaminated)\n";
    } else if (spec.command == "gen-data") {
      if (spec.user < 0) throw Error(ErrorCode::ConfigParse, "--user must be >= 0");
      const Trajectory data = training_data(hc.sim, cfg.outliers, hc.eval.base_seed, spec.user);
      std::ostringstream csv;
      write_trajectory_csv(csv, data);
      write_text(dir / "trajectory.csv", csv.str());
      out << "wrote " << data.size() << " tuples to " << (dir / "trajectory.csv").string() << '\n';
    } else {
      throw Error(ErrorCode::ConfigParse, "unknown command '" + spec.command + "'");
    }

    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    write_json(dir / "manifest.json", json{{"command", spec.command},
                                           {"tool_version", kToolVersion},
                                           {"base_seed", hc.eval.base_seed},
                                           {"config", config_to_json(cfg)},
                                           {"started_at", utc_timestamp()},
                                           {"wall_clock_seconds", elapsed}});
    return 0;
  } catch (const std::exception& e) {
    err << "robandit: error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace robandit
