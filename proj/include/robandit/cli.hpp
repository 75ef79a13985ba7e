#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "robandit/config.hpp"

namespace robandit {

inline constexpr const char* kToolVersion = "0.1.0";

/// One parsed command line.
struct RunSpec {
  std::string command;  // sweep-s1 | sweep-s2 | fit-one | gen-data
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;  // falls back to ROBANDIT_SEED, then the config
  std::vector<std::string> overrides;  // key=value
  std::optional<int> users;
  std::optional<double> psi;
  std::optional<double> nu;
  std::optional<int> horizon;
  std::optional<int> threads;
  int user = 0;  // fit-one / gen-data
};

/// Resolves the effective configuration: file, then --set, then dedicated
/// flags, then the seed chain.
RunConfig resolve_config(const RunSpec& spec);

/// Runs one command and writes its artifacts into spec.out_dir. Returns the
/// process exit code; diagnostics go to `err`, never as exceptions.
int run_command(const RunSpec& spec, std::ostream& out, std::ostream& err);

}  // namespace robandit
