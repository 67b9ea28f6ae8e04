#pragma once

// Canned command lines covering every subcommand, shared by the CLI unit
// tests and the determinism acceptance check.

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace oseval::testing {

struct CliRun {
  std::string name;
  std::vector<std::string> args;
  std::vector<std::string> outputs;  // files expected under the run's out-dir
};

/// Generates a calibration and an evaluation scenario under `data` with the
/// synth subcommand; returns its exit code.
int prepare_cli_data(const std::filesystem::path& data);

/// One invocation per subcommand (synth included), each writing to
/// `out / name`.
std::vector<CliRun> all_subcommands(const std::filesystem::path& data, const std::filesystem::path& out);

/// Relative path -> file content for every regular file under `dir`.
std::map<std::string, std::string> snapshot(const std::filesystem::path& dir);

/// Runs the CLI with output streams discarded.
int run_quiet(const std::vector<std::string>& args);

}  // namespace oseval::testing
