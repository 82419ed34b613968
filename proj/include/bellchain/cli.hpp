#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bellchain/chain.hpp"
#include "bellchain/exact.hpp"
#include "bellchain/shadows.hpp"

namespace bellchain::cli {

enum class Command { correlator, scan, gamma, critical_time, diagrams, asymptotic, shadows_cmd };

std::string to_string(Command c);
Command command_from_string(const std::string& s);

/// Bad user input; the driver maps this (and any std::invalid_argument) to
/// exit code 2, runtime failures to exit code 1.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Comma lists and inclusive ranges: "64,128", "1..5", "1..3,7".
std::vector<int> parse_int_list(const std::string& text);

/// "start:stop:steps" with decimal reals.
TimeGrid parse_grid(const std::string& text);

/// Everything a run depends on; a config plus the artifact version fully
/// determines the CSV bytes.
struct RunConfig {
    Command command = Command::correlator;
    std::vector<int> n_values;
    std::vector<int> r_values;
    Boundary boundary = Boundary::open;
    TimeGrid grid = TimeGrid{0.0, 1.5707963267948966, 2000};
    std::optional<double> tau;  // single-point alternative to the grid
    exact::EngineBackend backend = exact::EngineBackend::automatic;
    std::uint64_t seed = 1;
    long m_snapshots = 0;  // 0 -> m_per_spin * N
    long m_per_spin = 10000;
    int n_reconstructions = 10;
    shadows::CoherenceEstimator estimator = shadows::CoherenceEstimator::naive;
    int threads = 0;  // 0 keeps the OpenMP default
    std::string output;        // empty -> stdout, no sidecar
    std::string snapshots_out; // shadows only: raw snapshot dump
};

nlohmann::json config_json(const RunConfig& config);

/// Executes the run: writes the command's CSV plus a JSON sidecar
/// `<output>.json` echoing the resolved config. Returns 0 on success.
int run(const RunConfig& config);

}  // namespace bellchain::cli
