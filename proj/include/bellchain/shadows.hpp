#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bellchain/oracle.hpp"

namespace bellchain::shadows {

inline constexpr int kMaxShadowSpins = 10;

enum class Basis : std::uint8_t { x = 0, y = 1, z = 2 };

char to_char(Basis b);

/// One randomized measurement record: a Pauli basis and an outcome bit per
/// qubit (bit 0 = the +1 eigenvalue of the measured Pauli).
struct ShadowSnapshot {
    std::vector<Basis> bases;
    std::vector<std::uint8_t> outcomes;

    std::string bases_string() const;
    std::string outcome_string() const;
};

/// Counter-based randomness: the stream is keyed by (seed, reconstruction,
/// snapshot), so snapshots can be generated in any order or in parallel and
/// still reproduce bit-for-bit.
class SnapshotRng {
  public:
    SnapshotRng(std::uint64_t seed, std::uint64_t reconstruction, std::uint64_t snapshot);

    std::uint64_t next_u64();
    /// Uniform integer in [0, n) via multiply-high; n small (basis choice).
    std::uint32_t next_below(std::uint32_t n);
    /// Uniform double in [0, 1).
    double next_unit();

  private:
    std::uint64_t state_;
};

/// Born-rule outcome of measuring `state` in the given product basis.
std::vector<std::uint8_t> sample_outcome_in_bases(const oracle::StateVector& state,
                                                  std::span<const Basis> bases, SnapshotRng& rng);

ShadowSnapshot sample_snapshot(const oracle::StateVector& state, std::uint64_t seed,
                               std::uint64_t reconstruction, std::uint64_t snapshot);

std::vector<ShadowSnapshot> sample_snapshots(const oracle::StateVector& state, long m,
                                             std::uint64_t seed,
                                             std::uint64_t reconstruction = 0);

/// Single-snapshot estimate of the extremal x coherence <+x..|rho|-x..>:
/// the product over qubits of the tabulated per-(basis, bit) factors.
std::complex<double> snapshot_estimate(const ShadowSnapshot& snapshot);

/// Mean of snapshot_estimate over a batch; unbiased for the true element.
std::complex<double> estimate_coherence(std::span<const ShadowSnapshot> snapshots, int n_spins);

enum class CoherenceEstimator {
    naive,         // |mean estimate|^2; biased upward by the variance of the mean
    pair_product,  // mean over ordered pairs of distinct snapshots; unbiased for |element|^2
};

std::string to_string(CoherenceEstimator e);
CoherenceEstimator estimator_from_string(const std::string& s);

struct ReconstructionResult {
    long n_snapshots = 0;
    int n_reconstructions = 0;
    double q_mean = 0.0;
    double q_std = 0.0;
    double e_mean = 0.0;
};

/// Repeats the estimate n_reconstructions times on independent sub-streams
/// and reports mean/std of Q* = N + log2(E*) across reconstructions.
ReconstructionResult reconstruct(const oracle::StateVector& state, long m, int n_reconstructions,
                                 std::uint64_t seed,
                                 CoherenceEstimator estimator = CoherenceEstimator::naive);

}  // namespace bellchain::shadows
