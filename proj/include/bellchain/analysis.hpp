#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "bellchain/chain.hpp"
#include "bellchain/exact.hpp"

namespace bellchain::analysis {

enum class CorrelationLevel { consistent_with_lhv, entangled, bell_correlated };

/// Classification of one correlator value: strongest witnessed level, the
/// number of spins nu the correlations must span, and the fraction Q/N.
struct CorrelationClass {
    CorrelationLevel level = CorrelationLevel::consistent_with_lhv;
    int depth = 0;
    double fraction = 0.0;
};

/// Thresholds are strict: E > 2^-N flags Bell correlation, E > 4^-N flags
/// entanglement; exact equality is non-violation.
CorrelationClass classify_q(double q_value, int n_spins);
CorrelationClass classify(double e_value, int n_spins);

struct FirstMax {
    double tau_star = 0.0;
    double q_max = 0.0;
};

/// Q(tau) as a plain function, for search routines shared across backends.
using QFunction = std::function<double(double)>;

/// Dominant first maximum of Q over the grid: grid argmax refined by
/// golden-section search to tau resolution 1e-6. The grid argmax (rather than
/// the literal first local maximum) is what identifies the first physical
/// hump; all-to-all curves carry tiny interference ripples that would
/// otherwise win.
FirstMax find_first_max_of(const QFunction& q, const TimeGrid& grid);
FirstMax find_first_max(const ChainSpec& spec, const TimeGrid& grid,
                        exact::EngineBackend backend = exact::EngineBackend::automatic);

/// First upward crossing of Q = 0 at or before tau_star, bisected to 1e-8.
/// Empty when the maximum never breaks the limit.
std::optional<double> find_critical_time_of(const QFunction& q, const TimeGrid& grid,
                                            double tau_star, double q_max);
std::optional<double> find_critical_time(const ChainSpec& spec, const TimeGrid& grid,
                                         exact::EngineBackend backend = exact::EngineBackend::automatic);

struct ScanEntry {
    int n_spins = 0;
    int range = 0;
    double tau_star = 0.0;
    double q_max = 0.0;
    std::optional<double> tau_crit;
    int depth = 0;
    double fraction = 0.0;
};

/// Per-(N, r) first maximum, critical time and classification. Entries come
/// back sorted by (N, r) regardless of evaluation order.
std::vector<ScanEntry> scan(std::span<const int> n_values, std::span<const int> r_values,
                            const TimeGrid& grid,
                            exact::EngineBackend backend = exact::EngineBackend::automatic);

struct GammaFit {
    int range = 0;
    double gamma = 0.0;
    double gamma_stderr = 0.0;
    double intercept = 0.0;
    std::vector<int> n_values;
};

/// Least-squares slope of q_max versus N at fixed range.
GammaFit fit_gamma(int range, std::span<const int> n_values, const TimeGrid& grid,
                   exact::EngineBackend backend = exact::EngineBackend::automatic);

struct FractionEntry {
    int range = 0;
    int n_spins = 0;
    double beta = 0.0;
};

/// beta = q_max / N over a (r, N) grid; collapses onto one curve for N >> r.
std::vector<FractionEntry> fraction_scan(std::span<const int> r_values,
                                         std::span<const int> n_values, const TimeGrid& grid,
                                         exact::EngineBackend backend = exact::EngineBackend::automatic);

}  // namespace bellchain::analysis
