#include "bellchain/exact.hpp"

#include <gmp.h>
#include <mpfr.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "bellchain/oracle.hpp"

namespace bellchain::exact {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Renormalize by a power of two so the division is exact.
double pow2_normalizer(double max_abs) {
    return std::ldexp(1.0, static_cast<int>(std::lround(std::log2(max_abs))));
}

// One factorized sum 2^{-N} sum_s e^{-i tau H_s} (* s_1...s_N when signed).
// The double sum in the correlator splits because the sign weight carries only
// unprimed variables, and H_s is local: appending a spin only needs the last
// min(r, k) spin values. State = bitmask of that window, bit set <=> spin +1.
ScaledAmplitude window_dp(int n, int r, double tau, bool sign_weight) {
    // phase table e^{-i tau p} for p = -r..r (window spin sums)
    std::vector<std::complex<double>> phase(2 * r + 1);
    for (int p = -r; p <= r; ++p) phase[p + r] = std::polar(1.0, -tau * p);

    std::vector<std::complex<double>> amp(2), next;
    amp[1] = 1.0;                          // first spin +1
    amp[0] = sign_weight ? -1.0 : 1.0;     // first spin -1 carries weight s = -1
    double log2acc = 0.0;

    int w = 1;
    for (int k = 1; k < n; ++k) {
        const int wn = std::min(k + 1, r);
        next.assign(std::size_t{1} << wn, {0.0, 0.0});
        const std::uint32_t keep = (1u << wn) - 1;
        for (std::uint32_t m = 0; m < (1u << w); ++m) {
            const std::complex<double> a = amp[m];
            if (a == std::complex<double>{0.0, 0.0}) continue;
            const int ssum = 2 * std::popcount(m) - w;  // sum of window spins
            // s = +1
            next[((m << 1) | 1u) & keep] += a * phase[ssum + r];
            // s = -1
            const std::complex<double> b = sign_weight ? -a : a;
            next[(m << 1) & keep] += b * phase[-ssum + r];
        }
        amp.swap(next);
        w = wn;

        double mx = 0.0;
        for (const auto& a : amp) mx = std::max(mx, std::abs(a));
        if (mx == 0.0) return ScaledAmplitude::zero();
        const double norm = pow2_normalizer(mx);
        for (auto& a : amp) a /= norm;
        log2acc += std::log2(norm);
    }

    std::complex<double> total{0.0, 0.0};
    for (const auto& a : amp) total += a;
    if (total == std::complex<double>{0.0, 0.0}) return ScaledAmplitude::zero();
    const double norm = pow2_normalizer(std::abs(total));
    return ScaledAmplitude{total / norm, log2acc + std::log2(norm) - n};
}

// ---- all-to-all sector sum ------------------------------------------------

// Below this magnitude a double-precision sector sum is dominated by rounding
// of the cancelling terms and the result must be recomputed in multiprecision.
constexpr double kSectorNoiseFloor = 0x1p-40;

struct SectorSums {
    std::complex<double> c_plus;
    std::complex<double> c_minus;
};

SectorSums sector_sums_double(int n, double tau) {
    std::complex<double> cp{0.0, 0.0}, cm{0.0, 0.0};
    const double lg2 = std::log(2.0);
    for (int k = 0; k <= n; ++k) {
        const double m = n - 2.0 * k;
        const double h = 0.5 * (m * m - n);
        const double lw = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                          std::lgamma(n - k + 1.0) - n * lg2;
        const std::complex<double> term = std::exp(lw) * std::polar(1.0, -tau * h);
        cp += term;
        cm += (k % 2 == 0) ? term : -term;
    }
    return {cp, cm};
}

// Same sums with exact binomials and ~(n+96)-bit floats; returns log2|C+-|.
// Needed near the Bell crossing of large chains where |C-| ~ 2^{-N/2}.
std::pair<double, double> sector_log2_mpfr(int n, double tau) {
    const mpfr_prec_t prec = std::max(128, n + 96);
    mpfr_t t, arg, s, c, pr, pi, mr, mi, w, tmp;
    mpfr_inits2(prec, t, arg, s, c, pr, pi, mr, mi, w, tmp, nullptr);
    mpfr_set_d(t, tau, MPFR_RNDN);
    mpfr_set_zero(pr, 1);
    mpfr_set_zero(pi, 1);
    mpfr_set_zero(mr, 1);
    mpfr_set_zero(mi, 1);

    mpz_t binom;
    mpz_init(binom);
    for (int k = 0; k <= n; ++k) {
        const long m = n - 2L * k;
        const long twoh = m * m - n;  // 2 H, always even
        mpz_bin_uiui(binom, static_cast<unsigned long>(n), static_cast<unsigned long>(k));
        mpfr_set_z(w, binom, MPFR_RNDN);
        mpfr_mul_si(arg, t, -twoh, MPFR_RNDN);
        mpfr_div_ui(arg, arg, 2, MPFR_RNDN);
        mpfr_sin_cos(s, c, arg, MPFR_RNDN);  // e^{-i tau h} = c + i s with arg = -tau h
        mpfr_mul(c, c, w, MPFR_RNDN);
        mpfr_mul(s, s, w, MPFR_RNDN);
        mpfr_add(pr, pr, c, MPFR_RNDN);
        mpfr_add(pi, pi, s, MPFR_RNDN);
        if (k % 2 == 0) {
            mpfr_add(mr, mr, c, MPFR_RNDN);
            mpfr_add(mi, mi, s, MPFR_RNDN);
        } else {
            mpfr_sub(mr, mr, c, MPFR_RNDN);
            mpfr_sub(mi, mi, s, MPFR_RNDN);
        }
    }
    mpz_clear(binom);

    auto log2_hypot = [&](mpfr_t re, mpfr_t im) {
        mpfr_hypot(tmp, re, im, MPFR_RNDN);
        if (mpfr_zero_p(tmp)) return -kInf;
        mpfr_log2(tmp, tmp, MPFR_RNDN);
        return mpfr_get_d(tmp, MPFR_RNDN) - n;  // fold in the 2^{-N}
    };
    const double lp = log2_hypot(pr, pi);
    const double lm = log2_hypot(mr, mi);
    mpfr_clears(t, arg, s, c, pr, pi, mr, mi, w, tmp, nullptr);
    return {lp, lm};
}

CorrelatorPoint point_from_log2e(int n, double tau, double log2e) {
    return CorrelatorPoint{tau, std::exp2(log2e), n + log2e};
}

}  // namespace

AmplitudePair amplitude_sums(const ChainSpec& spec, double tau) {
    if (spec.boundary != Boundary::open)
        throw std::invalid_argument(
            "amplitude_sums supports open chains only; use the oracle for periodic");
    if (spec.range < 1) throw std::invalid_argument("range must be >= 1");
    if (spec.range > kMaxTransferRange)
        throw std::invalid_argument("transfer window 2^r too large for range " +
                                    std::to_string(spec.range));
    return AmplitudePair{window_dp(spec.n_spins, spec.range, tau, false),
                         window_dp(spec.n_spins, spec.range, tau, true)};
}

double correlator_r1_q(int n_spins, double tau) {
    if (n_spins < 2 || n_spins % 2 != 0)
        throw std::invalid_argument("closed form requires even n_spins >= 2");
    const double s = std::abs(std::sin(tau));
    const double c = std::abs(std::cos(tau));
    if (s == 0.0 || c == 0.0) return -kInf;
    // even N makes both powers even, so |.| loses nothing
    return n_spins + n_spins * std::log2(s) + (3.0 * n_spins - 4.0) * std::log2(c);
}

double correlator_r1(int n_spins, double tau) {
    return std::exp2(correlator_r1_q(n_spins, tau) - n_spins);
}

CorrelatorPoint correlator_all_to_all(int n_spins, double tau) {
    const auto [cp, cm] = sector_sums_double(n_spins, tau);
    const double ap = std::abs(cp), am = std::abs(cm);
    if (ap >= kSectorNoiseFloor && am >= kSectorNoiseFloor) {
        const double log2e = 2.0 * (std::log2(ap) + std::log2(am));
        return point_from_log2e(n_spins, tau, log2e);
    }
    const auto [lp, lm] = sector_log2_mpfr(n_spins, tau);
    return point_from_log2e(n_spins, tau, 2.0 * (lp + lm));
}

std::string to_string(EngineBackend b) {
    switch (b) {
        case EngineBackend::automatic: return "auto";
        case EngineBackend::transfer: return "transfer";
        case EngineBackend::oracle: return "oracle";
        case EngineBackend::closed_form: return "closed-form";
    }
    return "auto";
}

EngineBackend backend_from_string(const std::string& s) {
    if (s == "auto") return EngineBackend::automatic;
    if (s == "transfer") return EngineBackend::transfer;
    if (s == "oracle") return EngineBackend::oracle;
    if (s == "closed-form") return EngineBackend::closed_form;
    throw std::invalid_argument("unknown backend \"" + s + "\"");
}

CorrelatorPoint correlator(const ChainSpec& spec, double tau, EngineBackend backend) {
    const int n = spec.n_spins;
    switch (backend) {
        case EngineBackend::automatic:
            if (spec.boundary == Boundary::periodic)
                return correlator(spec, tau, EngineBackend::oracle);
            if (spec.all_to_all()) return correlator_all_to_all(n, tau);
            if (spec.range == 1 && n % 2 == 0)
                return point_from_log2e(n, tau, correlator_r1_q(n, tau) - n);
            return correlator(spec, tau, EngineBackend::transfer);
        case EngineBackend::transfer: {
            const auto amps = amplitude_sums(spec, tau);
            return point_from_log2e(n, tau, amps.log2_e());
        }
        case EngineBackend::oracle: {
            const double e = oracle::correlator_bruteforce(spec, tau);
            const double q = e > 0.0 ? n + std::log2(e) : -kInf;
            return CorrelatorPoint{tau, e, q};
        }
        case EngineBackend::closed_form:
            if (spec.all_to_all()) return correlator_all_to_all(n, tau);
            if (spec.range == 1 && n % 2 == 0)
                return point_from_log2e(n, tau, correlator_r1_q(n, tau) - n);
            throw std::invalid_argument("no closed form for this spec");
    }
    throw std::logic_error("unreachable backend");
}

}  // namespace bellchain::exact
