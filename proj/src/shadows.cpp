#include "bellchain/shadows.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace bellchain::shadows {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

void check_state(const oracle::StateVector& state) {
    if (state.n_spins < 1 || state.n_spins > kMaxShadowSpins)
        throw std::invalid_argument("shadow sampling capped at " +
                                    std::to_string(kMaxShadowSpins) + " spins");
    if (state.amplitudes.size() != (std::size_t{1} << state.n_spins))
        throw std::invalid_argument("state vector has wrong dimension");
}

// Per-qubit estimator factor tr[|-x><+x| (3 U^dag|b><b|U - 1)] = 3 <+x|s><s|-x>
// with |s> the observed eigenvector. Working the six cases out by hand:
//   X basis:  <+x|+x><+x|-x> = 0 and <+x|-x><-x|-x> = 0      -> 0, 0
//   Y basis:  s = |+i>: 3 (1+i)/2 (1+i)/2 = 3i/2; s = |-i> mirrors -> +-1.5i
//   Z basis:  s = |0>:  3 (1/sqrt2)(1/sqrt2) = 3/2; s = |1> -> -3/2
constexpr std::complex<double> kFactor[3][2] = {
    {{0.0, 0.0}, {0.0, 0.0}},
    {{0.0, 1.5}, {0.0, -1.5}},
    {{1.5, 0.0}, {-1.5, 0.0}},
};

// Rotate one qubit so the measured-basis eigenvectors become the index axes:
// afterwards index bit set = +1 outcome, bit clear = -1 outcome. The state
// layout has bit set = spin up, so Z is already diagonal and X/Y reduce to
// the usual Hadamard / phased-Hadamard pair update.
void apply_basis_rotation(std::vector<std::complex<double>>& amp, int qubit, Basis b) {
    if (b == Basis::z) return;
    const std::size_t stride = std::size_t{1} << qubit;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t base = 0; base < amp.size(); base += 2 * stride)
        for (std::size_t i = base; i < base + stride; ++i) {
            std::complex<double> down = amp[i];  // bit clear = spin down
            const std::complex<double> up = amp[i + stride];
            if (b == Basis::y) down *= std::complex<double>(0.0, -1.0);
            amp[i] = (up - down) * inv_sqrt2;           // <-eig | psi>
            amp[i + stride] = (up + down) * inv_sqrt2;  // <+eig | psi>
        }
}

std::complex<double> snapshot_factor(std::span<const Basis> bases,
                                     std::span<const std::uint8_t> outcomes) {
    std::complex<double> f{1.0, 0.0};
    for (std::size_t k = 0; k < bases.size(); ++k)
        f *= kFactor[static_cast<int>(bases[k])][outcomes[k]];
    return f;
}

// Draw bases; when none is X (the only case with a nonzero factor), sample the
// outcome and return the factor. The basis and outcome draws always consume
// the same stream positions, so this matches the exported-snapshot path.
std::complex<double> fused_snapshot_estimate(const oracle::StateVector& state,
                                             std::uint64_t seed, std::uint64_t rec,
                                             std::uint64_t snap) {
    SnapshotRng rng(seed, rec, snap);
    const int n = state.n_spins;
    std::vector<Basis> bases(n);
    bool has_x = false;
    for (int k = 0; k < n; ++k) {
        bases[k] = static_cast<Basis>(rng.next_below(3));
        has_x |= bases[k] == Basis::x;
    }
    if (has_x) return {0.0, 0.0};  // every X factor is zero; outcome irrelevant
    const auto outcome = sample_outcome_in_bases(state, bases, rng);
    return snapshot_factor(bases, outcome);
}

double q_of_e(int n, double e) { return e > 0.0 ? n + std::log2(e) : -kInf; }

}  // namespace

char to_char(Basis b) {
    switch (b) {
        case Basis::x: return 'X';
        case Basis::y: return 'Y';
        case Basis::z: return 'Z';
    }
    return '?';
}

std::string ShadowSnapshot::bases_string() const {
    std::string s;
    for (Basis b : bases) s.push_back(to_char(b));
    return s;
}

std::string ShadowSnapshot::outcome_string() const {
    std::string s;
    for (std::uint8_t o : outcomes) s.push_back(o ? '1' : '0');
    return s;
}

SnapshotRng::SnapshotRng(std::uint64_t seed, std::uint64_t reconstruction,
                         std::uint64_t snapshot) {
    std::uint64_t k = splitmix64(seed);
    k = splitmix64(k ^ (0x6a09e667f3bcc909ull + reconstruction));
    k = splitmix64(k ^ (0xbb67ae8584caa73bull + snapshot));
    state_ = k;
}

std::uint64_t SnapshotRng::next_u64() {
    state_ = splitmix64(state_);
    return state_;
}

std::uint32_t SnapshotRng::next_below(std::uint32_t n) {
    return static_cast<std::uint32_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
}

double SnapshotRng::next_unit() { return (next_u64() >> 11) * 0x1.0p-53; }

std::vector<std::uint8_t> sample_outcome_in_bases(const oracle::StateVector& state,
                                                  std::span<const Basis> bases,
                                                  SnapshotRng& rng) {
    check_state(state);
    const int n = state.n_spins;
    if (static_cast<int>(bases.size()) != n)
        throw std::invalid_argument("bases length must equal n_spins");

    std::vector<std::complex<double>> amp = state.amplitudes;
    for (int k = 0; k < n; ++k) apply_basis_rotation(amp, k, bases[k]);

    const double u = rng.next_unit();
    double acc = 0.0;
    std::size_t pick = amp.size() - 1;  // guards against rounding at u ~ 1
    for (std::size_t i = 0; i < amp.size(); ++i) {
        acc += std::norm(amp[i]);
        if (u < acc) {
            pick = i;
            break;
        }
    }

    // rotated index bit set = +1 eigenvector; outcome bit 0 encodes +1
    std::vector<std::uint8_t> out(n);
    for (int k = 0; k < n; ++k) out[k] = static_cast<std::uint8_t>(((pick >> k) & 1u) ? 0 : 1);
    return out;
}

ShadowSnapshot sample_snapshot(const oracle::StateVector& state, std::uint64_t seed,
                               std::uint64_t reconstruction, std::uint64_t snapshot) {
    check_state(state);
    SnapshotRng rng(seed, reconstruction, snapshot);
    ShadowSnapshot snap;
    snap.bases.resize(state.n_spins);
    for (auto& b : snap.bases) b = static_cast<Basis>(rng.next_below(3));
    snap.outcomes = sample_outcome_in_bases(state, snap.bases, rng);
    return snap;
}

std::vector<ShadowSnapshot> sample_snapshots(const oracle::StateVector& state, long m,
                                             std::uint64_t seed, std::uint64_t reconstruction) {
    check_state(state);
    if (m < 1) throw std::invalid_argument("snapshot count must be >= 1");
    std::vector<ShadowSnapshot> out(m);
#pragma omp parallel for schedule(dynamic, 64)
    for (long i = 0; i < m; ++i)
        out[i] = sample_snapshot(state, seed, reconstruction, static_cast<std::uint64_t>(i));
    return out;
}

std::complex<double> snapshot_estimate(const ShadowSnapshot& snapshot) {
    return snapshot_factor(snapshot.bases, snapshot.outcomes);
}

std::complex<double> estimate_coherence(std::span<const ShadowSnapshot> snapshots, int n_spins) {
    if (snapshots.empty()) throw std::invalid_argument("empty snapshot batch");
    std::complex<double> sum{0.0, 0.0};
    for (const auto& s : snapshots) {
        if (static_cast<int>(s.bases.size()) != n_spins)
            throw std::invalid_argument("snapshot width does not match n_spins");
        sum += snapshot_estimate(s);
    }
    return sum / static_cast<double>(snapshots.size());
}

std::string to_string(CoherenceEstimator e) {
    return e == CoherenceEstimator::naive ? "naive" : "pair-product";
}

CoherenceEstimator estimator_from_string(const std::string& s) {
    if (s == "naive") return CoherenceEstimator::naive;
    if (s == "pair-product" || s == "pair") return CoherenceEstimator::pair_product;
    throw std::invalid_argument("unknown estimator \"" + s + "\"");
}

ReconstructionResult reconstruct(const oracle::StateVector& state, long m,
                                 int n_reconstructions, std::uint64_t seed,
                                 CoherenceEstimator estimator) {
    check_state(state);
    if (m < 1) throw std::invalid_argument("snapshot count must be >= 1");
    if (n_reconstructions < 1) throw std::invalid_argument("need >= 1 reconstructions");
    if (estimator == CoherenceEstimator::pair_product && m < 2)
        throw std::invalid_argument("pair-product estimator needs >= 2 snapshots");

    const int n = state.n_spins;
    std::vector<double> qs(n_reconstructions), es(n_reconstructions);
    std::vector<std::complex<double>> values(m);
    for (int rec = 0; rec < n_reconstructions; ++rec) {
#pragma omp parallel for schedule(dynamic, 64)
        for (long i = 0; i < m; ++i)
            values[i] = fused_snapshot_estimate(state, seed, static_cast<std::uint64_t>(rec),
                                                static_cast<std::uint64_t>(i));
        // reduce in index order: results do not depend on the thread count
        std::complex<double> sum{0.0, 0.0};
        double sum_abs2 = 0.0;
        for (const auto& v : values) {
            sum += v;
            sum_abs2 += std::norm(v);
        }
        double e;
        if (estimator == CoherenceEstimator::naive) {
            e = std::norm(sum / static_cast<double>(m));
        } else {
            // mean of o_i conj(o_j) over ordered pairs i != j; can dip below 0
            const double md = static_cast<double>(m);
            e = (std::norm(sum) - sum_abs2) / (md * (md - 1.0));
        }
        es[rec] = e;
        qs[rec] = q_of_e(n, e);
    }

    ReconstructionResult out;
    out.n_snapshots = m;
    out.n_reconstructions = n_reconstructions;
    out.e_mean = std::accumulate(es.begin(), es.end(), 0.0) / n_reconstructions;
    out.q_mean = std::accumulate(qs.begin(), qs.end(), 0.0) / n_reconstructions;
    double ss = 0.0;
    for (double q : qs) ss += (q - out.q_mean) * (q - out.q_mean);
    out.q_std = n_reconstructions > 1 ? std::sqrt(ss / (n_reconstructions - 1.0)) : 0.0;
    return out;
}

}  // namespace bellchain::shadows
