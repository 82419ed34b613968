#pragma once

#include <gmpxx.h>

#include <optional>
#include <span>
#include <vector>

namespace bellchain::diagrams {

using BigInt = mpz_class;

double log2_bigint(const BigInt& v);

/// Perfect matchings of the graph on sites 1..N with edges at distance <= r,
/// counted exactly by a window DP over unmatched frontier sites. Odd N -> 0.
BigInt count_matchings(int n_spins, int range);

/// Fast log-domain companion of count_matchings (same DP in doubles).
double log_matchings(int n_spins, int range);

/// Triples i < j < k with k - i <= r (all three mutually coupled on a line).
long count_triangles(int n_spins, int range);

/// Matchings that leave no gap uncrossed: every boundary between adjacent
/// sites is spanned by at least one matched pair. Odd N -> 0.
BigInt count_spanning_clusters(int n_spins, int range);

struct DiagramCounts {
    int n_spins = 0;
    int range = 0;
    long k_lines = 0;        // coupled pairs, r(2N - r - 1)/2
    BigInt p_count;          // perfect matchings
    long r_count = 0;        // triangles
    BigInt spanning_count;   // matchings with no cut point
};

DiagramCounts count_all(int n_spins, int range);

/// Least-squares slope of ln P_r(N) versus N.
double fit_matching_exponent(int range, std::span<const int> n_values);

/// Truncated-inversion approximation of the correlator:
///   C- ~ P (cos t)^{K-N/2} (-i sin t)^{N/2},
///   C+ ~ (cos t)^K + R (cos t)^{K-3} (-i sin t)^3.
/// The |C+|^2 cross term vanishes (real times purely imaginary).
double asymptotic_q(int n_spins, int range, double tau);
double asymptotic_correlator(int n_spins, int range, double tau);

struct AsymptoticParams {
    double beta_exponent = 0.0;  // 2K - N/2
    double tau_max = 0.0;        // sqrt((N+6)/(2 beta))
    double e_tilde_max = 0.0;    // scaled log maximum; crossing exists iff >= 0
    std::optional<double> tau_crit;
};

/// Gaussian-envelope estimates of the correlator maximum and the limit
/// crossing time. Requires even N and r >= 2 (r = 1 has no triangle term).
AsymptoticParams gaussian_params(int n_spins, int range);

}  // namespace bellchain::diagrams
