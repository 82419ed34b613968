#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "bellchain/analysis.hpp"
#include "bellchain/oracle.hpp"

using namespace bellchain;
using analysis::CorrelationLevel;

namespace {
constexpr double kPi = 3.14159265358979323846;
const TimeGrid kGrid = make_time_grid(0.0, kPi / 2, 2000);
}  // namespace

TEST_CASE("classification thresholds") {
    const auto ghz = analysis::classify(0.25, 10);
    CHECK(ghz.level == CorrelationLevel::bell_correlated);
    CHECK(ghz.depth == 10);
    CHECK(ghz.fraction == doctest::Approx(0.8));

    // the bound is an inequality: exact equality does not violate
    const auto edge = analysis::classify(std::exp2(-8.0), 8);
    CHECK(edge.level != CorrelationLevel::bell_correlated);
    CHECK(edge.depth == 0);

    const auto mid = analysis::classify(3.0 * std::exp2(-16.0), 8);
    CHECK(mid.level == CorrelationLevel::entangled);

    const auto lhv = analysis::classify(std::exp2(-17.0), 8);
    CHECK(lhv.level == CorrelationLevel::consistent_with_lhv);

    CHECK_THROWS_AS(analysis::classify(0.3, 4), std::invalid_argument);
    CHECK_THROWS_AS(analysis::classify(-0.1, 4), std::invalid_argument);
}

TEST_CASE("depth is integral, clamped and weakly increasing in Q") {
    int prev = 0;
    for (double q = -2.0; q <= 14.0; q += 0.125) {
        const auto cls = analysis::classify_q(q, 12);
        CHECK(cls.depth >= prev);
        CHECK(cls.depth >= 0);
        CHECK(cls.depth <= 12);
        prev = cls.depth;
    }
    // half-open window: Q exactly at nu - 2 keeps depth nu
    CHECK(analysis::classify_q(2.0, 12).depth == 4);
    CHECK(analysis::classify_q(2.0 + 1e-9, 12).depth == 5);
    // GHZ: Q = N - 2 implies depth N
    CHECK(analysis::classify_q(10.0, 12).depth == 12);
}

TEST_CASE("first maximum: all-to-all hits the GHZ point") {
    const auto fm = analysis::find_first_max(make_chain_spec(64, 63), kGrid);
    CHECK(fm.tau_star == doctest::Approx(kPi / 4).epsilon(0).scale(1).epsilon(1e-5));
    CHECK(fm.q_max == doctest::Approx(62.0).epsilon(1e-9));
}

TEST_CASE("first maximum: nearest neighbours peak near pi/6") {
    const auto fm = analysis::find_first_max(make_chain_spec(40, 1), kGrid);
    // exact location atan(sqrt(N/(3N-4)))
    const double expected = std::atan(std::sqrt(40.0 / 116.0));
    CHECK(fm.tau_star == doctest::Approx(expected).epsilon(0).scale(1).epsilon(1e-4));
    CHECK(std::abs(fm.tau_star - kPi / 6) < 0.01);
    CHECK(fm.q_max == doctest::Approx(-24.06).epsilon(0).scale(1).epsilon(0.01));
}

TEST_CASE("first maximum agrees with dense-grid oracle maximization") {
    const auto spec = make_chain_spec(12, 2);
    const auto fm = analysis::find_first_max(spec, kGrid);
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 100000; ++i) {
        const double tau = kPi / 2 * i / 100000.0;
        const double e = oracle::correlator_bruteforce(spec, tau);
        if (e > 0) best = std::max(best, 12.0 + std::log2(e));
    }
    CHECK(fm.q_max == doctest::Approx(best).epsilon(0).scale(1).epsilon(1e-6));
}

TEST_CASE("critical time detection") {
    // short range never breaks the limit
    CHECK_FALSE(analysis::find_critical_time(make_chain_spec(100, 3), kGrid).has_value());

    // all-to-all: tau_c ~ 1.5/N
    const auto tc = analysis::find_critical_time(make_chain_spec(100, 99), kGrid);
    REQUIRE(tc.has_value());
    CHECK(std::abs(*tc - 0.015) / 0.015 < 0.2);

    // collapse across sizes at fixed r
    const auto a = analysis::find_critical_time(make_chain_spec(80, 4), kGrid);
    const auto b = analysis::find_critical_time(make_chain_spec(140, 4), kGrid);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(std::abs(*a - *b) / *b < 0.05);
}

TEST_CASE("critical time sits on the rise and crosses zero") {
    const auto spec = make_chain_spec(16, 4);
    const auto fm = analysis::find_first_max(spec, kGrid);
    REQUIRE(fm.q_max > 0.0);
    const auto tc = analysis::find_critical_time(spec, kGrid);
    REQUIRE(tc.has_value());
    CHECK(*tc < fm.tau_star);
    const double q_at = exact::correlator(spec, *tc).q_value;
    CHECK(std::abs(q_at) < 1e-6);
}

TEST_CASE("scan assembles entries in (N, r) order with classifications") {
    const std::vector<int> ns{8, 6};
    const std::vector<int> rs{2, 5, 1};
    const auto entries = analysis::scan(ns, rs, kGrid);
    REQUIRE(entries.size() == 6);
    CHECK(entries.front().n_spins == 6);
    CHECK(entries.front().range == 1);
    CHECK(entries.back().n_spins == 8);
    CHECK(entries.back().range == 5);
    for (const auto& e : entries) {
        CHECK(e.fraction == doctest::Approx(e.q_max / e.n_spins));
        if (e.tau_crit) CHECK(*e.tau_crit < e.tau_star);
        if (e.q_max <= 0.0) CHECK(e.depth == 0);
    }
}

TEST_CASE("gamma fit on the closed-form backend") {
    const std::vector<int> ns{64, 128, 256, 300};
    const auto fit = analysis::fit_gamma(1, ns, kGrid);
    // exact slope of q_max(N) for sin^N cos^{3N-4}, fitted over these N
    CHECK(fit.gamma == doctest::Approx(-0.6226).epsilon(0).scale(1).epsilon(2e-3));
    CHECK(fit.gamma_stderr < 2e-3);
    CHECK(fit.intercept == doctest::Approx(0.84).epsilon(0).scale(1).epsilon(0.05));
    const std::vector<int> two{8, 10};
    CHECK_THROWS_AS(analysis::fit_gamma(1, two, kGrid), std::invalid_argument);
}

TEST_CASE("fraction scan collapses for N >> r") {
    const std::vector<int> rs{4};
    const std::vector<int> ns{64, 128};
    const auto rows = analysis::fraction_scan(rs, ns, kGrid);
    REQUIRE(rows.size() == 2);
    CHECK(std::abs(rows[0].beta - rows[1].beta) < 0.01);
    CHECK(rows[0].beta > 0.0);
}
