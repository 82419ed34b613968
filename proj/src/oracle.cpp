#include "bellchain/oracle.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace bellchain::oracle {

namespace {

void check_cap(int n, int cap, const char* what) {
    if (n > cap)
        throw std::invalid_argument(std::string(what) + " capped at " + std::to_string(cap) +
                                    " spins, got " + std::to_string(n));
    if (n < 1) throw std::invalid_argument("n_spins must be positive");
}

int spin_of_bit(std::uint64_t config, int k) { return (config >> k) & 1 ? 1 : -1; }

}  // namespace

double StateVector::norm2() const {
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return s;
}

std::vector<long> energy_table(const ChainSpec& spec) {
    const int n = spec.n_spins;
    if (n > 30) throw std::invalid_argument("energy table over 2^N configs needs N <= 30");
    const std::size_t dim = std::size_t{1} << n;

    // coupled pairs straight from the coupling profile; the oracle stays as
    // close to the definition as possible
    std::vector<std::pair<int, int>> pairs;
    for (int k = 1; k <= n; ++k)
        for (int l = k + 1; l <= n; ++l)
            if (coupling(spec, k, l)) pairs.emplace_back(k - 1, l - 1);

    std::vector<long> energies(dim);
#pragma omp parallel for schedule(static)
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(dim); ++s) {
        long e = 0;
        for (const auto& [k, l] : pairs)
            e += spin_of_bit(static_cast<std::uint64_t>(s), k) *
                 spin_of_bit(static_cast<std::uint64_t>(s), l);
        energies[s] = e;
    }
    return energies;
}

StateVector evolve(const ChainSpec& spec, double tau, const Limits& limits) {
    check_cap(spec.n_spins, limits.max_spins, "evolve");
    const int n = spec.n_spins;
    const auto energies = energy_table(spec);

    // integer spectrum: tabulate e^{-i tau h} once
    long emax = 0;
    for (long e : energies) emax = std::max(emax, std::abs(e));
    std::vector<std::complex<double>> phase(2 * emax + 1);
    for (long h = -emax; h <= emax; ++h) phase[h + emax] = std::polar(1.0, -tau * h);

    StateVector psi;
    psi.n_spins = n;
    psi.amplitudes.resize(energies.size());
    const double a0 = std::pow(0.5, 0.5 * n);
#pragma omp parallel for schedule(static)
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(energies.size()); ++s)
        psi.amplitudes[s] = a0 * phase[energies[s] + emax];
    return psi;
}

std::pair<std::complex<double>, std::complex<double>> x_projections(const StateVector& state) {
    // <+-1_x|^N in the z basis is 2^{-N/2} sum_s (+-1)^{#down-bits...}: the
    // minus projection weighs each configuration by the product of its spins
    std::complex<double> cp{0.0, 0.0}, cm{0.0, 0.0};
    for (std::size_t s = 0; s < state.amplitudes.size(); ++s) {
        cp += state.amplitudes[s];
        const int down = state.n_spins - std::popcount(s);
        cm += (down % 2 == 0 ? 1.0 : -1.0) * state.amplitudes[s];
    }
    const double scale = std::pow(0.5, 0.5 * state.n_spins);
    return {cp * scale, cm * scale};
}

double correlator_of(const StateVector& state) {
    const auto [cp, cm] = x_projections(state);
    return std::norm(cp) * std::norm(cm);
}

std::complex<double> x_coherence(const StateVector& state) {
    const auto [cp, cm] = x_projections(state);
    return cp * std::conj(cm);
}

double correlator_bruteforce(const ChainSpec& spec, double tau, const Limits& limits) {
    return correlator_of(evolve(spec, tau, limits));
}

StateVector ghz_state(int n_spins, const Limits& limits) {
    check_cap(n_spins, limits.max_spins, "ghz_state");
    StateVector psi;
    psi.n_spins = n_spins;
    psi.amplitudes.assign(std::size_t{1} << n_spins, {0.0, 0.0});
    // (|1_x>^N + |-1_x>^N)/sqrt(2): configurations with an even number of
    // down spins survive
    const double a = std::pow(0.5, 0.5 * n_spins) * std::sqrt(2.0);
    for (std::size_t s = 0; s < psi.amplitudes.size(); ++s)
        if ((n_spins - std::popcount(s)) % 2 == 0) psi.amplitudes[s] = a;
    return psi;
}

double MqcSpectrum::total() const {
    double t = 0.0;
    for (double v : intensities) t += v;
    return t;
}

MqcSpectrum mqc_spectrum(const StateVector& state, const Limits& limits) {
    check_cap(state.n_spins, limits.max_mqc_spins, "mqc_spectrum");
    const int n = state.n_spins;
    const std::size_t dim = std::size_t{1} << n;
    if (state.amplitudes.size() != dim)
        throw std::invalid_argument("state vector has wrong dimension");

    // Hadamard-type transform into the x product basis (bit set = spin down
    // along x); afterwards the collective x operator is diagonal.
    std::vector<std::complex<double>> phi = state.amplitudes;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int k = 0; k < n; ++k) {
        const std::size_t stride = std::size_t{1} << k;
        for (std::size_t base = 0; base < dim; base += 2 * stride)
            for (std::size_t i = base; i < base + stride; ++i) {
                const auto lo = phi[i], hi = phi[i + stride];
                phi[i] = (lo + hi) * inv_sqrt2;
                phi[i + stride] = (lo - hi) * inv_sqrt2;
            }
    }

    // sector weights by number of down-x spins
    std::vector<double> w(n + 1, 0.0);
    for (std::size_t s = 0; s < dim; ++s) w[std::popcount(s)] += std::norm(phi[s]);

    // pure state: I_m = sum_c w_c w_{c+m}, the block norm over eigenvalue
    // differences of the half collective spin (spacing 1)
    MqcSpectrum spec;
    spec.n_spins = n;
    spec.intensities.assign(2 * n + 1, 0.0);
    for (int m = -n; m <= n; ++m) {
        double im = 0.0;
        for (int c = std::max(0, -m); c + std::max(0, m) <= n; ++c) im += w[c] * w[c + m];
        spec.intensities[m + n] = im;
    }
    return spec;
}

}  // namespace bellchain::oracle
