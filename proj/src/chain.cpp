#include "bellchain/chain.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace bellchain {

std::string to_string(Boundary b) {
    return b == Boundary::open ? "open" : "periodic";
}

Boundary boundary_from_string(const std::string& s) {
    if (s == "open") return Boundary::open;
    if (s == "periodic") return Boundary::periodic;
    throw std::invalid_argument("boundary must be \"open\" or \"periodic\", got \"" + s + "\"");
}

ChainSpec make_chain_spec(int n_spins, int range, Boundary boundary) {
    if (n_spins < 2) throw std::invalid_argument("n_spins must be >= 2");
    if (range < 1) throw std::invalid_argument("range must be >= 1");
    ChainSpec spec;
    spec.n_spins = n_spins;
    spec.range = std::min(range, n_spins - 1);
    spec.boundary = boundary;
    return spec;
}

namespace {

int site_distance(const ChainSpec& spec, int k, int l) {
    int d = std::abs(k - l);
    if (spec.boundary == Boundary::periodic) d = std::min(d, spec.n_spins - d);
    return d;
}

}  // namespace

int coupling(const ChainSpec& spec, int k, int l) {
    if (k < 1 || k > spec.n_spins || l < 1 || l > spec.n_spins)
        throw std::out_of_range("site index out of range");
    const int d = site_distance(spec, k, l);
    return (d > 0 && d <= spec.range) ? 1 : 0;
}

long coupled_pair_count(const ChainSpec& spec) {
    const long n = spec.n_spins;
    const long r = spec.range;
    if (spec.boundary == Boundary::open) return r * (2 * n - r - 1) / 2;
    long count = 0;
    for (int k = 1; k <= spec.n_spins; ++k)
        for (int l = k + 1; l <= spec.n_spins; ++l) count += coupling(spec, k, l);
    return count;
}

long classical_energy(const ChainSpec& spec, std::span<const int> config) {
    const int n = spec.n_spins;
    if (static_cast<int>(config.size()) != n)
        throw std::invalid_argument("config length does not match n_spins");
    for (int s : config)
        if (s != 1 && s != -1) throw std::invalid_argument("config entries must be +1 or -1");

    long energy = 0;
    if (spec.boundary == Boundary::open) {
        for (int d = 1; d <= spec.range; ++d)
            for (int k = 0; k + d < n; ++k) energy += config[k] * config[k + d];
    } else {
        // each unordered pair once; at distance N/2 the two wrap directions coincide
        for (int d = 1; d <= std::min(spec.range, (n - 1) / 2); ++d)
            for (int k = 0; k < n; ++k) energy += config[k] * config[(k + d) % n];
        if (n % 2 == 0 && spec.range >= n / 2)
            for (int k = 0; k < n / 2; ++k) energy += config[k] * config[k + n / 2];
    }
    return energy;
}

TimeGrid make_time_grid(double start, double stop, int steps) {
    if (steps < 1) throw std::invalid_argument("grid steps must be >= 1");
    if (!(stop >= start)) throw std::invalid_argument("grid stop must be >= start");
    if (steps == 1 && stop != start)
        throw std::invalid_argument("single-point grid requires stop == start");
    if (start < 0) throw std::invalid_argument("grid start must be >= 0");
    return TimeGrid{start, stop, steps};
}

std::string serialize(const ChainSpec& spec) {
    std::ostringstream os;
    os << "n_spins=" << spec.n_spins << "\n"
       << "range=" << spec.range << "\n"
       << "boundary=" << to_string(spec.boundary) << "\n";
    return os.str();
}

ChainSpec parse_chain_spec(const std::string& text) {
    int n = -1, r = -1;
    Boundary b = Boundary::open;
    bool saw_b = false;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("malformed chain spec line: " + line);
        const std::string key = line.substr(0, eq);
        const std::string val = line.substr(eq + 1);
        if (key == "n_spins") n = std::stoi(val);
        else if (key == "range") r = std::stoi(val);
        else if (key == "boundary") { b = boundary_from_string(val); saw_b = true; }
        else throw std::invalid_argument("unknown chain spec key: " + key);
    }
    if (n < 0 || r < 0 || !saw_b)
        throw std::invalid_argument("chain spec requires n_spins, range, boundary");
    return make_chain_spec(n, r, b);
}

}  // namespace bellchain
