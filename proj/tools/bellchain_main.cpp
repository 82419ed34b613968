// Command-line front end: every figure-quality data set the library produces
// is reachable from here as one deterministic, seeded run emitting CSV plus a
// JSON sidecar with the resolved configuration.

#include <CLI11.hpp>

#include <exception>
#include <iostream>
#include <string>

#include "bellchain/cli.hpp"
#include "bellchain/version.hpp"

namespace {

using bellchain::cli::Command;
using bellchain::cli::RunConfig;

struct RawOptions {
    std::string n_list;
    std::string r_list;
    std::string boundary = "open";
    std::string grid = "0:1.5707963267948966:2000";
    double tau = -1.0;
    bool tau_set = false;
    std::string backend = "auto";
    std::uint64_t seed = 1;
    long m_snapshots = 0;
    long m_per_spin = 10000;
    int n_reconstructions = 10;
    std::string estimator = "naive";
    int threads = 0;
    std::string output;
    std::string snapshots_out;
};

RunConfig build_config(Command command, const RawOptions& raw) {
    RunConfig config;
    config.command = command;
    config.n_values = bellchain::cli::parse_int_list(raw.n_list);
    config.r_values = bellchain::cli::parse_int_list(raw.r_list);
    config.boundary = bellchain::boundary_from_string(raw.boundary);
    config.grid = bellchain::cli::parse_grid(raw.grid);
    if (raw.tau_set) config.tau = raw.tau;
    config.backend = bellchain::exact::backend_from_string(raw.backend);
    config.seed = raw.seed;
    config.m_snapshots = raw.m_snapshots;
    config.m_per_spin = raw.m_per_spin;
    config.n_reconstructions = raw.n_reconstructions;
    config.estimator = bellchain::shadows::estimator_from_string(raw.estimator);
    config.threads = raw.threads;
    config.output = raw.output;
    config.snapshots_out = raw.snapshots_out;
    return config;
}

void add_common(CLI::App* cmd, RawOptions& raw, bool with_r = true) {
    cmd->add_option("--n", raw.n_list, "spin counts, e.g. 64,128 or 2..12")->required();
    if (with_r) cmd->add_option("--r", raw.r_list, "interaction ranges, e.g. 1..5")->required();
    cmd->add_option("--grid", raw.grid, "time grid start:stop:steps");
    cmd->add_option("--threads", raw.threads, "worker threads (0 = hardware default)");
    cmd->add_option("-o,--output", raw.output,
                    "output CSV path (sidecar <path>.json); stdout when omitted");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Bell correlator toolkit for finite-range Ising chains"};
    app.set_version_flag("--version", std::string(bellchain::kVersion));
    app.require_subcommand(1);

    RawOptions raw;
    Command command = Command::correlator;

    auto* correlator = app.add_subcommand("correlator", "E and Q on a time grid");
    add_common(correlator, raw);
    correlator->add_option("--tau", raw.tau, "single time instead of a grid")
        ->each([&raw](const std::string&) { raw.tau_set = true; });
    correlator->add_option("--boundary", raw.boundary, "open or periodic");
    correlator->add_option("--backend", raw.backend, "auto|transfer|oracle|closed-form");
    correlator->callback([&] { command = Command::correlator; });

    auto* scan = app.add_subcommand("scan", "first maximum, critical time, depth per (N, r)");
    add_common(scan, raw);
    scan->add_option("--backend", raw.backend, "auto|transfer|oracle|closed-form");
    scan->callback([&] { command = Command::scan; });

    auto* gamma = app.add_subcommand("gamma", "scaling exponent of Q_max versus N");
    add_common(gamma, raw);
    gamma->add_option("--backend", raw.backend, "auto|transfer|oracle|closed-form");
    gamma->callback([&] { command = Command::gamma; });

    auto* crit = app.add_subcommand("critical-time", "Bell-limit crossing times");
    add_common(crit, raw);
    crit->add_option("--backend", raw.backend, "auto|transfer|oracle|closed-form");
    crit->callback([&] { command = Command::critical_time; });

    auto* diagrams = app.add_subcommand("diagrams", "matching/triangle counts and envelope");
    add_common(diagrams, raw);
    diagrams->callback([&] { command = Command::diagrams; });

    auto* asymptotic = app.add_subcommand("asymptotic", "truncated-inversion correlator");
    add_common(asymptotic, raw);
    asymptotic->add_option("--tau", raw.tau, "single time instead of a grid")
        ->each([&raw](const std::string&) { raw.tau_set = true; });
    asymptotic->callback([&] { command = Command::asymptotic; });

    auto* shadows = app.add_subcommand("shadows", "randomized-measurement certification");
    add_common(shadows, raw);
    shadows->add_option("--tau", raw.tau, "single time instead of a grid")
        ->each([&raw](const std::string&) { raw.tau_set = true; });
    shadows->add_option("--boundary", raw.boundary, "open or periodic");
    shadows->add_option("--seed", raw.seed, "RNG seed; fixes every draw of the run");
    shadows->add_option("--m", raw.m_snapshots, "snapshots per reconstruction (overrides --m-per-spin)");
    shadows->add_option("--m-per-spin", raw.m_per_spin, "snapshots per reconstruction per spin");
    shadows->add_option("--reconstructions", raw.n_reconstructions, "independent reconstructions");
    shadows->add_option("--estimator", raw.estimator, "naive|pair-product");
    shadows->add_option("--snapshots-out", raw.snapshots_out,
                        "dump snapshots as bases,outcomes lines (single N, r, tau)");
    shadows->callback([&] { command = Command::shadows_cmd; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help/--version
        app.exit(e);
        return 2;
    }

    try {
        return bellchain::cli::run(build_config(command, raw));
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
