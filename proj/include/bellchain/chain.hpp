#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bellchain {

enum class Boundary { open, periodic };

std::string to_string(Boundary b);
Boundary boundary_from_string(const std::string& s);

/// Physical instance: N spins on a line, rectangular coupling profile of
/// range r (J = 1 for 0 < distance <= r, else 0), open or periodic ends.
struct ChainSpec {
    int n_spins = 2;
    int range = 1;
    Boundary boundary = Boundary::open;

    bool all_to_all() const { return range >= n_spins - 1; }
    /// Odd chains cannot host the all-spin coherence (global x-flip parity).
    bool parity_trivial() const { return n_spins % 2 != 0; }
};

/// Validates and normalizes: n >= 2, r >= 1, r clamped to n-1 (all-to-all).
ChainSpec make_chain_spec(int n_spins, int range, Boundary boundary = Boundary::open);

/// J_{kl} for 1-based sites: 1 iff the (boundary-aware) distance is in (0, r].
int coupling(const ChainSpec& spec, int k, int l);

/// Number of coupled (unordered) pairs. Open chains: r(2N - r - 1)/2.
long coupled_pair_count(const ChainSpec& spec);

/// Classical Ising energy H_s = sum over coupled pairs {k,l} of s_k s_l,
/// each pair counted once. Entries must be +1/-1.
long classical_energy(const ChainSpec& spec, std::span<const int> config);

/// Uniform time grid, endpoints included. steps is the number of points.
struct TimeGrid {
    double start = 0.0;
    double stop = 0.0;
    int steps = 1;

    double tau(int i) const {
        if (steps <= 1) return start;
        return start + (stop - start) * static_cast<double>(i) / (steps - 1);
    }
};

TimeGrid make_time_grid(double start, double stop, int steps);

/// Flat key-value serialization: "n_spins=8\nrange=3\nboundary=open\n".
std::string serialize(const ChainSpec& spec);
ChainSpec parse_chain_spec(const std::string& text);

}  // namespace bellchain
