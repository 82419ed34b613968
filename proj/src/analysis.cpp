#include "bellchain/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bellchain/sweep.hpp"

namespace bellchain::analysis {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTauStarTol = 1e-6;
constexpr double kTauCritTol = 1e-8;

double golden_max(const QFunction& f, double a, double b, double tol) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

CorrelationClass classify_q(double q_value, int n_spins) {
    CorrelationClass out;
    out.fraction = q_value / n_spins;  // -inf propagates as-is
    if (q_value > 0.0) {
        out.level = CorrelationLevel::bell_correlated;
        out.depth = std::clamp(static_cast<int>(std::ceil(q_value + 2.0)), 0, n_spins);
    } else {
        out.depth = 0;
        // entangled iff E > 4^-N, i.e. q > -N
        out.level = q_value > -static_cast<double>(n_spins) ? CorrelationLevel::entangled
                                                            : CorrelationLevel::consistent_with_lhv;
    }
    return out;
}

CorrelationClass classify(double e_value, int n_spins) {
    if (!(e_value >= 0.0) || e_value > 0.25)
        throw std::invalid_argument("e_value must lie in [0, 1/4]");
    const double q = e_value > 0.0 ? n_spins + std::log2(e_value) : -kInf;
    return classify_q(q, n_spins);
}

FirstMax find_first_max_of(const QFunction& q, const TimeGrid& grid) {
    if (grid.steps < 3) throw std::invalid_argument("maximum search needs >= 3 grid points");
    int best = 0;
    double qbest = -kInf;
    std::vector<double> qs(grid.steps);
    for (int i = 0; i < grid.steps; ++i) {
        qs[i] = q(grid.tau(i));
        if (qs[i] > qbest) {
            qbest = qs[i];
            best = i;
        }
    }
    if (best == 0 || best == grid.steps - 1 || qbest == -kInf)
        throw std::runtime_error("no interior maximum of Q on the grid");
    const double a = grid.tau(best - 1);
    const double b = grid.tau(best + 1);
    const double ts = golden_max(q, a, b, kTauStarTol);
    return FirstMax{ts, q(ts)};
}

FirstMax find_first_max(const ChainSpec& spec, const TimeGrid& grid,
                        exact::EngineBackend backend) {
    const auto series = sweep::evaluate_series(spec, grid, backend);
    int best = 0;
    for (int i = 1; i < grid.steps; ++i)
        if (series[i].q_value > series[best].q_value) best = i;
    if (best == 0 || best == grid.steps - 1 || series[best].q_value == -kInf)
        throw std::runtime_error("no interior maximum of Q on the grid");
    const QFunction q = [&](double tau) { return exact::correlator(spec, tau, backend).q_value; };
    const double ts = golden_max(q, grid.tau(best - 1), grid.tau(best + 1), kTauStarTol);
    return FirstMax{ts, q(ts)};
}

std::optional<double> find_critical_time_of(const QFunction& q, const TimeGrid& grid,
                                            double tau_star, double q_max) {
    if (q_max <= 0.0) return std::nullopt;
    double prev_tau = grid.tau(0);
    double prev_q = q(prev_tau);
    for (int i = 1; i < grid.steps && prev_tau <= tau_star; ++i) {
        const double t = grid.tau(i);
        const double v = q(t);
        if (prev_q <= 0.0 && v > 0.0) {
            double lo = prev_tau, hi = t;
            while (hi - lo > kTauCritTol) {
                const double mid = 0.5 * (lo + hi);
                (q(mid) > 0.0 ? hi : lo) = mid;
            }
            return 0.5 * (lo + hi);
        }
        prev_tau = t;
        prev_q = v;
    }
    return std::nullopt;
}

std::optional<double> find_critical_time(const ChainSpec& spec, const TimeGrid& grid,
                                         exact::EngineBackend backend) {
    const auto fm = find_first_max(spec, grid, backend);
    const QFunction q = [&](double tau) { return exact::correlator(spec, tau, backend).q_value; };
    return find_critical_time_of(q, grid, fm.tau_star, fm.q_max);
}

std::vector<ScanEntry> scan(std::span<const int> n_values, std::span<const int> r_values,
                            const TimeGrid& grid, exact::EngineBackend backend) {
    std::vector<std::pair<int, int>> pairs;
    for (int n : n_values)
        for (int r : r_values) pairs.emplace_back(n, r);
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

    std::vector<ScanEntry> out;
    out.reserve(pairs.size());
    for (const auto& [n, r] : pairs) {
        const ChainSpec spec = make_chain_spec(n, r);
        const auto fm = find_first_max(spec, grid, backend);
        const QFunction q = [&](double tau) {
            return exact::correlator(spec, tau, backend).q_value;
        };
        ScanEntry e;
        e.n_spins = n;
        e.range = spec.range;
        e.tau_star = fm.tau_star;
        e.q_max = fm.q_max;
        e.tau_crit = find_critical_time_of(q, grid, fm.tau_star, fm.q_max);
        const auto cls = classify_q(fm.q_max, n);
        e.depth = cls.depth;
        e.fraction = cls.fraction;
        out.push_back(std::move(e));
    }
    return out;
}

GammaFit fit_gamma(int range, std::span<const int> n_values, const TimeGrid& grid,
                   exact::EngineBackend backend) {
    if (n_values.size() < 3) throw std::invalid_argument("gamma fit needs >= 3 N values");
    GammaFit fit;
    fit.range = range;
    fit.n_values.assign(n_values.begin(), n_values.end());
    std::sort(fit.n_values.begin(), fit.n_values.end());

    std::vector<double> xs, ys;
    for (int n : fit.n_values) {
        const auto fm = find_first_max(make_chain_spec(n, range), grid, backend);
        xs.push_back(n);
        ys.push_back(fm.q_max);
    }
    const double m = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = m * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("degenerate gamma fit");
    fit.gamma = (m * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.gamma * sx) / m;

    double ss_res = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (fit.gamma * xs[i] + fit.intercept);
        ss_res += e * e;
    }
    const double var = xs.size() > 2 ? ss_res / (m - 2.0) : 0.0;
    fit.gamma_stderr = std::sqrt(var * m / denom);
    return fit;
}

std::vector<FractionEntry> fraction_scan(std::span<const int> r_values,
                                         std::span<const int> n_values, const TimeGrid& grid,
                                         exact::EngineBackend backend) {
    const auto entries = scan(n_values, r_values, grid, backend);
    std::vector<FractionEntry> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back({e.range, e.n_spins, e.fraction});
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return std::tie(a.range, a.n_spins) < std::tie(b.range, b.n_spins);
    });
    return out;
}

}  // namespace bellchain::analysis
