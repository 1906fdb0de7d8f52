#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include "config.hpp"

namespace csgauge::cli {

enum ExitCode : int { kSuccess = 0, kFailure = 1, kConfigError = 2, kDivergence = 3 };

/// Output names in the configs are taken relative to `out`, which is created if needed.
void run_simulate(const SimulateConfig& c, const std::filesystem::path& out, int threads, std::ostream& log);
void run_feasibility(const FeasibilityConfig& c, const std::filesystem::path& out, int threads, std::ostream& log);
void run_nullforms(const NullformsConfig& c, const std::filesystem::path& out, int threads, std::ostream& log);
void run_norms(const NormsConfig& c, const std::filesystem::path& out, std::ostream& log);

/// Parses the config for `command`, runs it and maps failures to exit codes;
/// messages go to `err`.
int run(const std::string& command, const std::filesystem::path& config, const std::filesystem::path& out,
        int threads, std::ostream& log, std::ostream& err);

}  // namespace csgauge::cli
