#include "bellchain/diagrams.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <vector>

#include "bellchain/chain.hpp"

namespace bellchain::diagrams {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_counting_args(int n_spins, int range) {
    if (n_spins < 2) throw std::invalid_argument("n_spins must be >= 2");
    if (range < 1) throw std::invalid_argument("range must be >= 1");
    if (range > 20) throw std::invalid_argument("matching DP window capped at range 20");
}

// Window DP shared by exact, log-domain and spanning-cluster counting.
// After processing site k the state is the bitmask of still-unmatched sites
// among the last min(k, r) (bit 0 = site k). A site falling off the window
// unmatched can never be matched, so that branch dies. Forbidding the
// all-matched state before the end kills every matching with a cut point.
template <typename Count>
Count matching_dp(int n, int r, bool forbid_cut) {
    std::vector<Count> dp(std::size_t{1} << r, Count(0)), next(dp.size(), Count(0));
    dp[0] = Count(1);  // empty prefix
    int w = 0;         // window width so far
    for (int k = 1; k <= n; ++k) {
        const int wn = std::min(k, r);
        std::fill(next.begin(), next.begin() + (std::size_t{1} << wn), Count(0));
        const bool full = w == r;
        const std::uint32_t keep = (1u << wn) - 1;
        for (std::uint32_t m = 0; m <= (w ? ((1u << w) - 1) : 0u); ++m) {
            const Count& c = dp[m];
            if (c == Count(0)) continue;
            // leave site k unmatched (oldest window site must not drop off open)
            if (!(full && (m >> (r - 1)) & 1u)) next[((m << 1) | 1u) & keep] += c;
            // or match it with an unmatched site in the window
            for (int d = 0; d < w; ++d) {
                if (!((m >> d) & 1u)) continue;
                const std::uint32_t m2 = m & ~(1u << d);
                if (full && ((m2 >> (r - 1)) & 1u)) continue;
                next[(m2 << 1) & keep] += c;
            }
        }
        dp.swap(next);
        w = wn;
        if (forbid_cut && k < n) dp[0] = Count(0);
    }
    return dp[0];
}

}  // namespace

double log2_bigint(const BigInt& v) {
    if (v <= 0) return -kInf;
    long exp2 = 0;
    const double d = mpz_get_d_2exp(&exp2, v.get_mpz_t());
    return std::log2(d) + static_cast<double>(exp2);
}

BigInt count_matchings(int n_spins, int range) {
    check_counting_args(n_spins, range);
    if (n_spins % 2 != 0) return 0;
    return matching_dp<BigInt>(n_spins, std::min(range, n_spins - 1), false);
}

double log_matchings(int n_spins, int range) {
    check_counting_args(n_spins, range);
    if (n_spins % 2 != 0) return -kInf;
    // doubles hold counts exactly up to 2^53 and stay exact far beyond the
    // big-integer cross-check range as a sum of rounded terms
    const double p = matching_dp<double>(n_spins, std::min(range, n_spins - 1), false);
    return p > 0.0 ? std::log(p) : -kInf;
}

long count_triangles(int n_spins, int range) {
    if (n_spins < 3) return 0;
    if (range < 1) throw std::invalid_argument("range must be >= 1");
    long count = 0;
    for (long d = 2; d <= std::min<long>(range, n_spins - 1); ++d)
        count += (d - 1) * (n_spins - d);  // d = span, d-1 middles, N-d placements
    return count;
}

BigInt count_spanning_clusters(int n_spins, int range) {
    check_counting_args(n_spins, range);
    if (n_spins % 2 != 0) return 0;
    return matching_dp<BigInt>(n_spins, std::min(range, n_spins - 1), true);
}

DiagramCounts count_all(int n_spins, int range) {
    DiagramCounts out;
    out.n_spins = n_spins;
    out.range = std::min(range, n_spins - 1);
    out.k_lines = static_cast<long>(out.range) * (2L * n_spins - out.range - 1) / 2;
    out.p_count = count_matchings(n_spins, out.range);
    out.r_count = count_triangles(n_spins, out.range);
    out.spanning_count = count_spanning_clusters(n_spins, out.range);
    return out;
}

double fit_matching_exponent(int range, std::span<const int> n_values) {
    std::set<int> distinct(n_values.begin(), n_values.end());
    if (distinct.size() < 2) throw std::invalid_argument("exponent fit needs >= 2 distinct N");
    for (int n : n_values)
        if (n % 2 != 0) throw std::invalid_argument("exponent fit needs even N values");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int n : n_values) {
        const double y = log2_bigint(count_matchings(n, range)) * std::log(2.0);
        sx += n;
        sy += y;
        sxx += static_cast<double>(n) * n;
        sxy += n * y;
    }
    const double m = n_values.size();
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

double asymptotic_q(int n_spins, int range, double tau) {
    if (n_spins % 2 != 0) throw std::invalid_argument("asymptotic correlator needs even N");
    const int r = std::min(range, n_spins - 1);
    const double K = static_cast<double>(r) * (2.0 * n_spins - r - 1) / 2.0;
    const double log2P = log2_bigint(count_matchings(n_spins, r));
    const double R = static_cast<double>(count_triangles(n_spins, r));

    const double s = std::abs(std::sin(tau));
    const double c = std::abs(std::cos(tau));
    if (s == 0.0 || c == 0.0) return -kInf;
    const double l2s = std::log2(s), l2c = std::log2(c);

    const double log2_cm2 = 2.0 * log2P + (2.0 * K - n_spins) * l2c + n_spins * l2s;
    // |C+|^2 = cos^{2K} + R^2 sin^6 cos^{2K-6}
    const double log2_cp2 =
        (2.0 * K - 6.0) * l2c + std::log2(std::pow(c, 6) + R * R * std::pow(s, 6));
    return n_spins + log2_cp2 + log2_cm2;
}

double asymptotic_correlator(int n_spins, int range, double tau) {
    return std::exp2(asymptotic_q(n_spins, range, tau) - n_spins);
}

AsymptoticParams gaussian_params(int n_spins, int range) {
    if (n_spins % 2 != 0) throw std::invalid_argument("gaussian_params needs even N");
    if (range < 2)
        throw std::invalid_argument("gaussian_params needs range >= 2 (no triangles at r = 1)");
    const int r = std::min(range, n_spins - 1);
    const double n = n_spins;
    const double K = static_cast<double>(r) * (2.0 * n_spins - r - 1) / 2.0;

    AsymptoticParams out;
    out.beta_exponent = 2.0 * K - n / 2.0;
    out.tau_max = std::sqrt((n + 6.0) / (2.0 * out.beta_exponent));

    const double lnP = log2_bigint(count_matchings(n_spins, r)) * std::log(2.0);
    const double lnR = std::log(static_cast<double>(count_triangles(n_spins, r)));
    const double c = 1.0 + 6.0 / n;
    out.e_tilde_max =
        n * (2.0 * (lnP + lnR) / n - c * std::log(1.0 / out.tau_max) + std::log(2.0) - c / 2.0);
    if (out.e_tilde_max >= 0.0)
        out.tau_crit = out.tau_max - std::sqrt(out.e_tilde_max / (2.0 * out.beta_exponent));
    return out;
}

}  // namespace bellchain::diagrams
