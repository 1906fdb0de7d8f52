#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "csgauge/datagen.hpp"
#include "csgauge/nullforms.hpp"
#include "csgauge/xsb.hpp"

namespace csgauge::cli {

/// Rejected configuration: bad JSON, unknown or missing keys, out-of-range values.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SimulateConfig {
    std::string system = "csd";
    int n1 = 64, n2 = 64;
    double length = 16.0;
    double dt = 1.0 / 1024.0;
    double T = 1.0;
    int steps = 0;  ///< T / dt, checked to be an integer
    double mass = 0.0;
    std::string scheme = "exponential";
    int picard_nodes = 65;
    int picard_max_iterations = 60;
    double picard_tolerance = 1e-13;
    std::uint64_t seed = 0;
    PacketSpec field;
    PacketSpec gauge{2, 0.05, 1.0, 1.5, 1.0};
    bool dealias = true;
    bool couple_gauge = true;
    bool compensate_mass = true;
    int sample_every = 16;
    int snapshot_every = 0;  ///< in steps; 0 writes the initial and final states only
    std::string diagnostics_csv = "diagnostics.csv";
    std::string snapshot_prefix = "snapshot";
};

struct FeasibilityConfig {
    xsb::ScanSetup scan;
    double eps = 0.01;  ///< offset of the probe points around (1/4, 3/4)
    std::string region_csv = "region.csv";
    std::string report_jsonl = "reports.jsonl";
};

struct NullformsConfig {
    DominanceSetup setup;
    int probe_samples = 10000;
    std::string dominance_csv = "dominance.csv";
};

struct NormsConfig {
    std::string snapshot;
    double s = 1.0;
    std::string output = "norms.json";
};

/// Flat JSON object: scalar values only, every key known to the command, seeds
/// mandatory where the command draws random numbers.
SimulateConfig parse_simulate(const std::string& json_text);
FeasibilityConfig parse_feasibility(const std::string& json_text);
NullformsConfig parse_nullforms(const std::string& json_text);
NormsConfig parse_norms(const std::string& json_text);

std::string read_text(const std::filesystem::path& path);

}  // namespace csgauge::cli
