#pragma once

#include <complex>
#include <string>
#include <vector>

#include "bellchain/chain.hpp"
#include "bellchain/scaled_amplitude.hpp"

namespace bellchain::exact {

/// Extremal x-basis amplitudes of the evolved state: c_plus is the amplitude
/// of all spins up along x, c_minus of all spins down.
struct AmplitudePair {
    ScaledAmplitude c_plus;
    ScaledAmplitude c_minus;

    /// log2 of |C+|^2 |C-|^2; -inf when either amplitude vanishes.
    double log2_e() const { return c_plus.log2_abs2() + c_minus.log2_abs2(); }
    double e_value() const { return std::exp2(log2_e()); }
    double q_value(int n_spins) const { return n_spins + log2_e(); }
};

/// Sliding-window evaluation of C+- for an open chain: O(N 2^r) per call.
/// The window state is the tuple of the last min(r, position) spins; per-layer
/// renormalization keeps everything in log2 domain.
AmplitudePair amplitude_sums(const ChainSpec& spec, double tau);

/// Largest window the transfer evaluation will allocate (2^r states).
inline constexpr int kMaxTransferRange = 22;

struct CorrelatorPoint {
    double tau = 0.0;
    double e_value = 0.0;
    double q_value = 0.0;  // n_spins + log2(e); -inf when e == 0
};

enum class EngineBackend { automatic, transfer, oracle, closed_form };

std::string to_string(EngineBackend b);
EngineBackend backend_from_string(const std::string& s);

/// Nearest-neighbour closed form sin^N(tau) cos^{3N-4}(tau); N even.
double correlator_r1(int n_spins, double tau);
double correlator_r1_q(int n_spins, double tau);

/// All-to-all evaluation over magnetization sectors, O(N) terms. Escalates to
/// multiprecision when the double-precision sum is below its rounding floor.
CorrelatorPoint correlator_all_to_all(int n_spins, double tau);

/// E and Q at a single time; dispatches to the cheapest exact backend unless
/// overridden. Periodic chains route to the brute-force oracle.
CorrelatorPoint correlator(const ChainSpec& spec, double tau,
                           EngineBackend backend = EngineBackend::automatic);

struct CorrelatorSeries {
    ChainSpec spec;
    TimeGrid grid;
    std::vector<CorrelatorPoint> values;
};

}  // namespace bellchain::exact
