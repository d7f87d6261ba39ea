#ifndef COVERTBC_CLI_HPP
#define COVERTBC_CLI_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace covertbc {

inline constexpr const char* kToolName = "covertbc";
inline constexpr const char* kToolVersion = "0.1.0";

enum class Command { Capacity, Condition, Map, Region, Converse, Keys, Simulate, Sweep };

const char* command_name(Command command);
std::optional<Command> parse_command(const std::string& name);

/// One batch run: a command, its input spec, the output path, and every
/// scalar parameter. All randomness flows from the single seed.
struct RunManifest {
  Command command = Command::Capacity;
  std::string spec_path;
  std::string out_path;
  double delta = 1.0;
  std::vector<long long> n_values = {10000};
  double rho = 0.5;
  double grid_step = 0.02;
  long long trials = 1000;
  std::uint64_t seed = 1;
  bool bits = false;
  double rates_fraction = 0.3;
  long long resolution = 33;
};

/// Executes the manifest: writes exactly one results file plus a JSON sidecar
/// echoing all parameters. Returns the process exit code (0 ok, 2 parse,
/// 3 precondition, 4 numeric failure); on failure a machine-readable error
/// record goes to stdout and no results file is written.
int dispatch(const RunManifest& manifest);

std::string sidecar_path_for(const std::string& out_path);

/// Rebuilds a manifest from a sidecar file, so a run can be reproduced.
RunManifest manifest_from_sidecar(const std::string& sidecar_path);

}  // namespace covertbc

#endif
