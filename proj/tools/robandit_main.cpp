#include <iostream>

#include <CLI11.hpp>

#include "robandit/cli.hpp"

int main(int argc, char** argv) {
  robandit::RunSpec spec;
  CLI::App app{"Robust actor-critic contextual bandit experiments"};
  app.set_version_flag("--version", robandit::kToolVersion);
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  int users = 0, horizon = 0, threads = 0;
  double psi = 0.0, nu = 0.0;

  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {{"sweep-s1", "vary the contaminated fraction psi at fixed nu"},
                      {"sweep-s2", "vary the contamination strength nu at fixed psi"},
                      {"fit-one", "fit RS-ACCB and S-ACCB on one user's training trajectory"},
                      {"gen-data", "write one user's (contaminated) training trajectory as CSV"}};
  std::vector<CLI::App*> commands;
  std::vector<CLI::Option*> seed_opts, users_opts, psi_opts, nu_opts, horizon_opts, threads_opts;
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("--config", spec.config_path, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--out", spec.out_dir, "output directory");
    seed_opts.push_back(sub->add_option("--seed", seed, "base seed (default: $ROBANDIT_SEED, then config)"));
    sub->add_option("--set", spec.overrides, "config override key=value (repeatable)");
    users_opts.push_back(sub->add_option("--users", users, "number of simulated users"));
    psi_opts.push_back(sub->add_option("--psi", psi, "contaminated tuple ratio"));
    nu_opts.push_back(sub->add_option("--nu", nu, "contamination strength"));
    horizon_opts.push_back(sub->add_option("--horizon", horizon, "training tuples per user"));
    threads_opts.push_back(sub->add_option("--threads", threads, "worker threads"));
    if (std::string(s.name) == "fit-one" || std::string(s.name) == "gen-data")
      sub->add_option("--user", spec.user, "user index");
    commands.push_back(sub);
  }

  CLI11_PARSE(app, argc, argv);

  for (std::size_t i = 0; i < commands.size(); ++i) {
    if (!commands[i]->parsed()) continue;
    spec.command = commands[i]->get_name();
    if (seed_opts[i]->count()) spec.seed = seed;
    if (users_opts[i]->count()) spec.users = users;
    if (psi_opts[i]->count()) spec.psi = psi;
    if (nu_opts[i]->count()) spec.nu = nu;
    if (horizon_opts[i]->count()) spec.horizon = horizon;
    if (threads_opts[i]->count()) spec.threads = threads;
  }
  return robandit::run_command(spec, std::cout, std::cerr);
}
