#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

namespace dicke::cli {

/// Process exit codes shared by all subcommands.
enum ExitCode : int {
    kExitOk = 0,
    kExitConfigError = 2,
    kExitGeometryInfeasible = 3,
    kExitDestructiveInterference = 4,
    kExitIoError = 5,
};

/// Failure writing an output artifact (distinct from config-read problems,
/// which are config errors).
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Options collected from the command line; overrides beat config values.
struct CommandOptions {
    std::filesystem::path config_path;
    std::optional<std::uint64_t> seed_override;
    std::optional<std::uint64_t> samples_override;
    std::optional<std::string> engine_override;
    std::optional<std::string> out_override;
    int num_threads = 0;  // 0 = hardware concurrency
};

/// Each command returns a process exit code and reports the outcome as a
/// single JSON record on stdout (success payload or error record).
int cmd_simulate(const CommandOptions& options);
int cmd_montecarlo(const CommandOptions& options);
int cmd_scan(const CommandOptions& options);

}  // namespace dicke::cli
