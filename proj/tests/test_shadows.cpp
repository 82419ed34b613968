#include <doctest.h>

#include <cmath>
#include <complex>
#include <set>

#include "bellchain/oracle.hpp"
#include "bellchain/shadows.hpp"

using namespace bellchain;
using shadows::Basis;

namespace {

constexpr double kPi = 3.14159265358979323846;

// the per-(basis, outcome) estimator factor from first principles:
// 3 <+x|s><s|-x> with s the observed eigenvector in spin-up/down components
std::complex<double> factor_reference(Basis b, int outcome) {
    using cd = std::complex<double>;
    const double isq = 1.0 / std::sqrt(2.0);
    cd s_up, s_down;  // observed eigenvector
    switch (b) {
        case Basis::x: s_up = isq; s_down = outcome ? -isq : isq; break;
        case Basis::y: s_up = isq; s_down = cd(0.0, outcome ? -1.0 : 1.0) * isq; break;
        case Basis::z: s_up = outcome ? 0.0 : 1.0; s_down = outcome ? 1.0 : 0.0; break;
    }
    const cd plus_up = isq, plus_down = isq;    // |+x>
    const cd minus_up = isq, minus_down = -isq; // |-x>
    const cd bra_s = std::conj(s_up) * plus_up + std::conj(s_down) * plus_down;  // <s|+x>
    const cd s_ket = std::conj(minus_up) * s_up + std::conj(minus_down) * s_down; // <-x|s>...
    // <+x|s> <s|-x>
    return 3.0 * std::conj(bra_s) * std::conj(s_ket);
}

oracle::StateVector x_polarized(int n) { return oracle::evolve(make_chain_spec(n, 1), 0.0); }

}  // namespace

TEST_CASE("tabulated estimator factors match the first-principles values") {
    for (Basis b : {Basis::x, Basis::y, Basis::z})
        for (int outcome : {0, 1}) {
            shadows::ShadowSnapshot snap;
            snap.bases = {b};
            snap.outcomes = {static_cast<std::uint8_t>(outcome)};
            const auto got = shadows::snapshot_estimate(snap);
            const auto want = factor_reference(b, outcome);
            CHECK(std::abs(got - want) < 1e-14);
        }
}

TEST_CASE("eigenstate measured in its own basis is deterministic") {
    const auto plus = x_polarized(3);
    std::vector<Basis> bases(3, Basis::x);
    for (std::uint64_t i = 0; i < 50; ++i) {
        shadows::SnapshotRng rng(7, 0, i);
        const auto out = shadows::sample_outcome_in_bases(plus, bases, rng);
        for (auto bit : out) CHECK(bit == 0);  // +1 eigenvalue everywhere
    }
}

TEST_CASE("unbiased superposition gives independent uniform bits") {
    // |1_z>^N in the x basis: z-polarized state = equal-weight x superposition
    oracle::StateVector up;
    up.n_spins = 4;
    up.amplitudes.assign(16, {0.0, 0.0});
    up.amplitudes[15] = 1.0;  // all spins up along z
    std::vector<Basis> bases(4, Basis::x);
    int ones = 0;
    const int trials = 4000;
    for (std::uint64_t i = 0; i < trials; ++i) {
        shadows::SnapshotRng rng(11, 0, i);
        for (auto bit : shadows::sample_outcome_in_bases(up, bases, rng)) ones += bit;
    }
    const double mean = static_cast<double>(ones) / (4.0 * trials);
    CHECK(std::abs(mean - 0.5) < 5.0 * 0.5 / std::sqrt(4.0 * trials));
}

TEST_CASE("GHZ in the all-X basis collapses onto the two extremal strings") {
    const auto ghz = oracle::ghz_state(4);
    std::vector<Basis> bases(4, Basis::x);
    std::set<std::string> seen;
    for (std::uint64_t i = 0; i < 200; ++i) {
        shadows::SnapshotRng rng(3, 0, i);
        const auto out = shadows::sample_outcome_in_bases(ghz, bases, rng);
        std::string s;
        for (auto bit : out) s.push_back(bit ? '1' : '0');
        seen.insert(s);
    }
    for (const auto& s : seen) CHECK((s == "0000" || s == "1111"));
    CHECK(seen.size() == 2);  // both branches appear in 200 draws
}

TEST_CASE("coherence estimate converges to the GHZ element 1/2") {
    const auto ghz = oracle::ghz_state(3);
    const long m = 200000;
    const auto snaps = shadows::sample_snapshots(ghz, m, 2024);
    const auto est = shadows::estimate_coherence(snaps, 3);
    // var of the mean <= (3/2)^N / m
    const double sigma = std::sqrt(std::pow(1.5, 3) / m);
    CHECK(std::abs(est - std::complex<double>{0.5, 0.0}) < 5.0 * sigma);
}

TEST_CASE("estimate vanishes on the x-polarized product state") {
    const auto plus = x_polarized(4);
    const auto snaps = shadows::sample_snapshots(plus, 100000, 5);
    const auto est = shadows::estimate_coherence(snaps, 4);
    const double sigma = std::sqrt(std::pow(1.5, 4) / 100000.0);
    CHECK(std::abs(est) < 5.0 * sigma);
}

TEST_CASE("estimator is unbiased for the evolved-state element") {
    const auto spec = make_chain_spec(4, 3);
    const auto psi = oracle::evolve(spec, 0.5);
    const auto truth = oracle::x_coherence(psi);
    const long m = 1000000;
    const auto snaps = shadows::sample_snapshots(psi, m, 99);
    const auto est = shadows::estimate_coherence(snaps, 4);
    const double sigma = std::sqrt(std::pow(1.5, 4) / m);
    CHECK(std::abs(est - truth) < 4.0 * sigma);
    // squared modulus lands near the oracle correlator
    CHECK(std::abs(std::norm(est) - oracle::correlator_of(psi)) <
          4.0 * 2.0 * std::abs(truth) * sigma + 4.0 * sigma * sigma);
}

TEST_CASE("per-snapshot second moment is (3/2)^N exactly in expectation") {
    // |factor|^2 is (9/4)^N when no qubit drew X and 0 otherwise, so the
    // second moment is ((2/3)(9/4))^N = (3/2)^N independent of the state
    for (int n : {2, 4, 6}) {
        const auto psi = oracle::evolve(make_chain_spec(n, 2), 0.45);
        const long m = 60000;
        const auto snaps = shadows::sample_snapshots(psi, m, 31 + n);
        double second = 0.0;
        for (const auto& s : snaps) second += std::norm(shadows::snapshot_estimate(s));
        second /= static_cast<double>(m);
        const double expected = std::pow(1.5, n);
        const double p = std::pow(2.0 / 3.0, n);  // share of all-nonzero snapshots
        const double rel_sigma = std::sqrt((1.0 - p) / (p * m));
        CHECK(std::abs(second / expected - 1.0) < 6.0 * rel_sigma);
    }
}

TEST_CASE("reconstruction is reproducible bit for bit") {
    const auto psi = oracle::evolve(make_chain_spec(4, 3), 0.6);
    const auto a = shadows::reconstruct(psi, 5000, 4, 77);
    const auto b = shadows::reconstruct(psi, 5000, 4, 77);
    CHECK(a.q_mean == b.q_mean);
    CHECK(a.q_std == b.q_std);
    CHECK(a.e_mean == b.e_mean);
    const auto c = shadows::reconstruct(psi, 5000, 4, 78);
    CHECK(a.q_mean != c.q_mean);
}

TEST_CASE("reconstruct matches the exported-snapshot estimate") {
    const auto psi = oracle::evolve(make_chain_spec(3, 2), 0.5);
    const long m = 2000;
    const auto one = shadows::reconstruct(psi, m, 1, 123);
    const auto snaps = shadows::sample_snapshots(psi, m, 123, 0);
    const auto est = shadows::estimate_coherence(snaps, 3);
    CHECK(one.q_mean == 3.0 + std::log2(std::norm(est)));
}

TEST_CASE("GHZ-time reconstruction certifies Q = N - 2") {
    const auto psi = oracle::evolve(make_chain_spec(4, 3), kPi / 4);
    const auto res = shadows::reconstruct(psi, 40000, 10, 1);
    CHECK(std::abs(res.q_mean - 2.0) <= 2.0 * res.q_std);
}

TEST_CASE("tiny batches degrade gracefully") {
    const auto psi = oracle::evolve(make_chain_spec(4, 3), 0.6);
    const auto res = shadows::reconstruct(psi, 10, 10, 5);
    CHECK(res.q_std >= 0.0);
    CHECK(res.n_snapshots == 10);
}

TEST_CASE("pair-product estimator removes the |mean|^2 bias") {
    const auto ghz = oracle::ghz_state(3);
    const auto res = shadows::reconstruct(ghz, 60000, 10, 9,
                                          shadows::CoherenceEstimator::pair_product);
    CHECK(std::abs(res.e_mean - 0.25) < 0.01);
}

TEST_CASE("error paths") {
    const auto psi = oracle::evolve(make_chain_spec(4, 3), 0.5);
    CHECK_THROWS_AS(shadows::reconstruct(psi, 0, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(shadows::reconstruct(psi, 100, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(shadows::sample_snapshots(psi, -1, 1), std::invalid_argument);
    std::vector<shadows::ShadowSnapshot> empty;
    CHECK_THROWS_AS(shadows::estimate_coherence(empty, 4), std::invalid_argument);
    const auto big = oracle::evolve(make_chain_spec(11, 3), 0.1);
    CHECK_THROWS_AS(shadows::sample_snapshots(big, 10, 1), std::invalid_argument);
}
