#include "bellchain/cli.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bellchain/analysis.hpp"
#include "bellchain/csv.hpp"
#include "bellchain/diagrams.hpp"
#include "bellchain/oracle.hpp"
#include "bellchain/sweep.hpp"
#include "bellchain/version.hpp"

namespace bellchain::cli {

namespace {

namespace fs = std::filesystem;

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, sep)) parts.push_back(item);
    return parts;
}

int parse_int(const std::string& s) {
    std::size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(s, &pos);
    } catch (const std::exception&) {
        throw ConfigError("not an integer: \"" + s + "\"");
    }
    if (pos != s.size()) throw ConfigError("not an integer: \"" + s + "\"");
    return v;
}

double parse_real(const std::string& s) {
    std::size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw ConfigError("not a real number: \"" + s + "\"");
    }
    if (pos != s.size()) throw ConfigError("not a real number: \"" + s + "\"");
    return v;
}

fs::path resolve_output(const std::string& output) {
    fs::path p(output);
    if (const char* dir = std::getenv("BELLCHAIN_OUTDIR"); dir && *dir && p.is_relative())
        p = fs::path(dir) / p;
    return p;
}

struct OutputSink {
    std::ofstream file;
    std::ostream* os = &std::cout;
    fs::path path;

    explicit OutputSink(const std::string& output) {
        if (output.empty()) return;
        path = resolve_output(output);
        if (path.has_parent_path()) fs::create_directories(path.parent_path());
        file.open(path);
        if (!file) throw std::runtime_error("cannot open output file " + path.string());
        os = &file;
    }
};

std::vector<double> grid_taus(const RunConfig& config) {
    if (config.tau) return {*config.tau};
    std::vector<double> taus(config.grid.steps);
    for (int i = 0; i < config.grid.steps; ++i) taus[i] = config.grid.tau(i);
    return taus;
}

void require(bool cond, const std::string& message) {
    if (!cond) throw ConfigError(message);
}

void emit_correlator(const RunConfig& config, std::ostream& os) {
    os << "N,r,boundary,tau,e_value,q_value\n";
    for (int n : config.n_values)
        for (int r : config.r_values) {
            const ChainSpec spec = make_chain_spec(n, r, config.boundary);
            if (config.tau) {
                const auto pt = exact::correlator(spec, *config.tau, config.backend);
                os << n << ',' << spec.range << ',' << to_string(spec.boundary) << ','
                   << csv::format_real(pt.tau) << ',' << csv::format_real(pt.e_value) << ','
                   << csv::format_real(pt.q_value) << '\n';
                continue;
            }
            const auto series = sweep::evaluate_series(spec, config.grid, config.backend);
            for (const auto& pt : series)
                os << n << ',' << spec.range << ',' << to_string(spec.boundary) << ','
                   << csv::format_real(pt.tau) << ',' << csv::format_real(pt.e_value) << ','
                   << csv::format_real(pt.q_value) << '\n';
        }
}

void emit_scan(const RunConfig& config, std::ostream& os) {
    require(config.boundary == Boundary::open, "scan supports open chains only");
    os << "N,r,tau_star,q_max,tau_crit,nu,beta\n";
    const auto entries =
        analysis::scan(config.n_values, config.r_values, config.grid, config.backend);
    for (const auto& e : entries)
        os << e.n_spins << ',' << e.range << ',' << csv::format_real(e.tau_star) << ','
           << csv::format_real(e.q_max) << ',' << csv::format_optional(e.tau_crit) << ','
           << e.depth << ',' << csv::format_real(e.fraction) << '\n';
}

void emit_gamma(const RunConfig& config, std::ostream& os) {
    require(config.boundary == Boundary::open, "gamma supports open chains only");
    os << "r,gamma,gamma_stderr,intercept\n";
    for (int r : config.r_values) {
        const auto fit = analysis::fit_gamma(r, config.n_values, config.grid, config.backend);
        os << r << ',' << csv::format_real(fit.gamma) << ','
           << csv::format_real(fit.gamma_stderr) << ',' << csv::format_real(fit.intercept)
           << '\n';
    }
}

void emit_diagrams(const RunConfig& config, std::ostream& os) {
    os << "N,r,K,P,R,spanning,beta_N,tau_max,e_tilde_max,tau_crit\n";
    for (int n : config.n_values)
        for (int r : config.r_values) {
            const auto counts = diagrams::count_all(n, r);
            os << n << ',' << counts.range << ',' << counts.k_lines << ','
               << counts.p_count.get_str() << ',' << counts.r_count << ','
               << counts.spanning_count.get_str() << ',';
            if (n % 2 == 0 && counts.range >= 2) {
                const auto params = diagrams::gaussian_params(n, counts.range);
                os << csv::format_real(params.beta_exponent) << ','
                   << csv::format_real(params.tau_max) << ','
                   << csv::format_real(params.e_tilde_max) << ','
                   << csv::format_optional(params.tau_crit) << '\n';
            } else {
                os << ",,,\n";
            }
        }
}

void emit_asymptotic(const RunConfig& config, std::ostream& os) {
    os << "N,r,boundary,tau,e_value,q_value\n";
    const auto taus = grid_taus(config);
    for (int n : config.n_values)
        for (int r : config.r_values)
            for (double tau : taus) {
                const double q = diagrams::asymptotic_q(n, r, tau);
                os << n << ',' << std::min(r, n - 1) << ",open," << csv::format_real(tau) << ','
                   << csv::format_real(std::exp2(q - n)) << ',' << csv::format_real(q) << '\n';
            }
}

void emit_shadows(const RunConfig& config, std::ostream& os) {
    for (int n : config.n_values)
        require(n <= shadows::kMaxShadowSpins,
                "shadows capped at " + std::to_string(shadows::kMaxShadowSpins) + " spins");
    const auto taus = grid_taus(config);
    const bool export_snapshots = !config.snapshots_out.empty();
    if (export_snapshots)
        require(config.n_values.size() == 1 && config.r_values.size() == 1 && taus.size() == 1,
                "--snapshots-out needs a single N, r and tau");

    os << "N,r,tau,M,n_rec,q_exact,q_mean,q_std\n";
    for (int n : config.n_values)
        for (int r : config.r_values) {
            const ChainSpec spec = make_chain_spec(n, r, config.boundary);
            const long m = config.m_snapshots > 0 ? config.m_snapshots : config.m_per_spin * n;
            for (double tau : taus) {
                const auto state = oracle::evolve(spec, tau);
                const auto result = shadows::reconstruct(state, m, config.n_reconstructions,
                                                         config.seed, config.estimator);
                const double q_exact = exact::correlator(spec, tau).q_value;
                os << n << ',' << spec.range << ',' << csv::format_real(tau) << ',' << m << ','
                   << result.n_reconstructions << ',' << csv::format_real(q_exact) << ','
                   << csv::format_real(result.q_mean) << ',' << csv::format_real(result.q_std)
                   << '\n';
                if (export_snapshots) {
                    OutputSink snap_sink(config.snapshots_out);
                    const auto snaps = shadows::sample_snapshots(state, m, config.seed, 0);
                    for (const auto& s : snaps)
                        *snap_sink.os << s.bases_string() << ',' << s.outcome_string() << '\n';
                }
            }
        }
}

}  // namespace

std::string to_string(Command c) {
    switch (c) {
        case Command::correlator: return "correlator";
        case Command::scan: return "scan";
        case Command::gamma: return "gamma";
        case Command::critical_time: return "critical-time";
        case Command::diagrams: return "diagrams";
        case Command::asymptotic: return "asymptotic";
        case Command::shadows_cmd: return "shadows";
    }
    return "correlator";
}

Command command_from_string(const std::string& s) {
    if (s == "correlator") return Command::correlator;
    if (s == "scan") return Command::scan;
    if (s == "gamma") return Command::gamma;
    if (s == "critical-time") return Command::critical_time;
    if (s == "diagrams") return Command::diagrams;
    if (s == "asymptotic") return Command::asymptotic;
    if (s == "shadows") return Command::shadows_cmd;
    throw ConfigError("unknown command \"" + s + "\"");
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (const std::string& part : split(text, ',')) {
        if (part.empty()) throw ConfigError("empty item in list \"" + text + "\"");
        const auto dots = part.find("..");
        if (dots == std::string::npos) {
            out.push_back(parse_int(part));
            continue;
        }
        const int lo = parse_int(part.substr(0, dots));
        const int hi = parse_int(part.substr(dots + 2));
        if (hi < lo) throw ConfigError("descending range \"" + part + "\"");
        for (int v = lo; v <= hi; ++v) out.push_back(v);
    }
    if (out.empty()) throw ConfigError("empty list");
    return out;
}

TimeGrid parse_grid(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw ConfigError("grid must be start:stop:steps, got \"" + text + "\"");
    try {
        return make_time_grid(parse_real(parts[0]), parse_real(parts[1]), parse_int(parts[2]));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("bad grid: ") + e.what());
    }
}

nlohmann::json config_json(const RunConfig& config) {
    nlohmann::json j;
    j["command"] = to_string(config.command);
    j["n"] = config.n_values;
    j["r"] = config.r_values;
    j["boundary"] = bellchain::to_string(config.boundary);
    j["grid"] = {{"start", config.grid.start},
                 {"stop", config.grid.stop},
                 {"steps", config.grid.steps}};
    if (config.tau) j["tau"] = *config.tau; else j["tau"] = nullptr;
    j["backend"] = exact::to_string(config.backend);
    j["seed"] = config.seed;
    j["m_snapshots"] = config.m_snapshots;
    j["m_per_spin"] = config.m_per_spin;
    j["n_reconstructions"] = config.n_reconstructions;
    j["estimator"] = shadows::to_string(config.estimator);
    j["threads"] = config.threads;
    j["output"] = config.output;
    j["snapshots_out"] = config.snapshots_out;
    return j;
}

int run(const RunConfig& config) {
    require(!config.n_values.empty(), "at least one N is required (--n)");
    require(!config.r_values.empty(), "at least one r is required (--r)");
    for (int n : config.n_values) require(n >= 2, "n_spins must be >= 2");
    for (int r : config.r_values) require(r >= 1, "range must be >= 1");
    require(config.threads >= 0, "threads must be >= 0");
    if (config.threads > 0) omp_set_num_threads(config.threads);

    const RunConfig& resolved = config;
    const auto t0 = std::chrono::steady_clock::now();
    OutputSink sink(config.output);
    switch (config.command) {
        case Command::correlator: emit_correlator(resolved, *sink.os); break;
        case Command::scan: emit_scan(resolved, *sink.os); break;
        case Command::gamma: emit_gamma(resolved, *sink.os); break;
        case Command::critical_time: emit_scan(resolved, *sink.os); break;
        case Command::diagrams: emit_diagrams(resolved, *sink.os); break;
        case Command::asymptotic: emit_asymptotic(resolved, *sink.os); break;
        case Command::shadows_cmd: emit_shadows(resolved, *sink.os); break;
    }
    sink.os->flush();
    const auto t1 = std::chrono::steady_clock::now();

    if (!config.output.empty()) {
        nlohmann::json sidecar;
        sidecar["config"] = config_json(resolved);
        sidecar["version"] = kVersion;
        sidecar["wall_time_seconds"] = std::chrono::duration<double>(t1 - t0).count();
        fs::path sidecar_path = sink.path;
        sidecar_path += ".json";
        std::ofstream js(sidecar_path);
        if (!js) throw std::runtime_error("cannot open sidecar " + sidecar_path.string());
        js << sidecar.dump(2) << '\n';
    }
    return 0;
}

}  // namespace bellchain::cli
