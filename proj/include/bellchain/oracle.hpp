#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "bellchain/chain.hpp"

namespace bellchain::oracle {

/// Size caps keeping the brute-force paths in test-suite territory.
/// Knobs, not constants: pass larger values where 2^N memory is acceptable.
struct Limits {
    int max_spins = 14;
    int max_mqc_spins = 12;
};

/// Full 2^N state in the z product basis; index bit k = spin k, bit set = up.
struct StateVector {
    int n_spins = 0;
    std::vector<std::complex<double>> amplitudes;

    double norm2() const;
};

/// Classical energy H_s for every z configuration, index = bitmask.
std::vector<long> energy_table(const ChainSpec& spec);

/// e^{-i tau H} |1_x>^N: amplitude of configuration s is 2^{-N/2} e^{-i tau H_s}.
/// Diagonal evolution, so both boundaries are supported.
StateVector evolve(const ChainSpec& spec, double tau, const Limits& limits = {});

/// (<+1_x^N | psi>, <-1_x^N | psi>) via sign sums over the z amplitudes.
std::pair<std::complex<double>, std::complex<double>> x_projections(const StateVector& state);

/// |C+|^2 |C-|^2 for an arbitrary state.
double correlator_of(const StateVector& state);

/// rho element <+1_x^N| rho |-1_x^N> = C+ conj(C-); the shadows target.
std::complex<double> x_coherence(const StateVector& state);

double correlator_bruteforce(const ChainSpec& spec, double tau, const Limits& limits = {});

/// (|1_x>^N + |-1_x>^N)/sqrt(2) expressed in the z basis.
StateVector ghz_state(int n_spins, const Limits& limits = {});

/// Intensities I_m of the density-matrix blocks connecting eigenspaces of the
/// collective half x-spin differing by m in units of its level spacing;
/// m runs over -N..N and I_N equals the Bell correlator.
struct MqcSpectrum {
    int n_spins = 0;
    std::vector<double> intensities;  // index m + N

    double intensity(int m) const { return intensities.at(m + n_spins); }
    double extremal() const { return intensity(n_spins); }
    double total() const;
};

MqcSpectrum mqc_spectrum(const StateVector& state, const Limits& limits = {});

}  // namespace bellchain::oracle
