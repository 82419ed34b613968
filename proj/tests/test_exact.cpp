#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>

#include "bellchain/exact.hpp"
#include "bellchain/oracle.hpp"

using namespace bellchain;
using exact::EngineBackend;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

TEST_CASE("two-spin amplitudes by hand: C+ = cos, C- = -i sin") {
    const auto spec = make_chain_spec(2, 1);
    const auto amps = exact::amplitude_sums(spec, kPi / 4);
    const auto cp = amps.c_plus.to_complex();
    const auto cm = amps.c_minus.to_complex();
    CHECK(cp.real() == doctest::Approx(std::cos(kPi / 4)).epsilon(1e-14));
    CHECK(cp.imag() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(cm.real() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(cm.imag() == doctest::Approx(-std::sin(kPi / 4)).epsilon(1e-14));
}

TEST_CASE("no evolution means unit C+ and vanishing C-") {
    for (int n : {2, 5, 16})
        for (int r : {1, 3}) {
            if (r >= n) continue;
            const auto amps = exact::amplitude_sums(make_chain_spec(n, r), 0.0);
            CHECK(std::abs(amps.c_plus.to_complex() - std::complex<double>{1.0, 0.0}) < 1e-14);
            CHECK(amps.c_minus.is_zero());
            CHECK(amps.q_value(n) == -kInf);
        }
}

TEST_CASE("transfer matrix matches the 2^16 oracle") {
    const auto spec = make_chain_spec(16, 3);
    const auto amps = exact::amplitude_sums(spec, 0.3);
    const double e_oracle =
        oracle::correlator_bruteforce(spec, 0.3, oracle::Limits{.max_spins = 16});
    CHECK(amps.e_value() == doctest::Approx(e_oracle).epsilon(0).scale(1).epsilon(1e-10));
    CHECK(std::abs(amps.e_value() - e_oracle) < 1e-10);
}

TEST_CASE("dispatch picks an exact backend everywhere") {
    // r = 1 closed form
    const auto p1 = exact::correlator(make_chain_spec(8, 1), 0.4);
    CHECK(p1.e_value == doctest::Approx(exact::correlator_r1(8, 0.4)).epsilon(1e-14));
    // all-to-all sector path vs transfer window at small N
    const auto spec = make_chain_spec(10, 9);
    const auto sector = exact::correlator(spec, 0.2);
    const auto transfer = exact::correlator(spec, 0.2, EngineBackend::transfer);
    CHECK(std::abs(sector.e_value - transfer.e_value) < 1e-12);
    // forced oracle agrees too
    const auto brute = exact::correlator(spec, 0.2, EngineBackend::oracle);
    CHECK(std::abs(sector.e_value - brute.e_value) < 1e-12);
    // mid-range goes through the window DP
    const auto p2 = exact::correlator(make_chain_spec(6, 2), 0.4);
    const auto b2 = exact::correlator(make_chain_spec(6, 2), 0.4, EngineBackend::oracle);
    CHECK(std::abs(p2.e_value - b2.e_value) < 1e-12);
}

TEST_CASE("closed form r = 1") {
    CHECK(exact::correlator_r1(2, kPi / 4) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(exact::correlator_r1(4, kPi / 6) == doctest::Approx(81.0 / 4096.0).epsilon(1e-13));
    CHECK(exact::correlator_r1(12, 0.0) == 0.0);
    CHECK(exact::correlator_r1_q(12, 0.0) == -kInf);
    CHECK_THROWS_AS(exact::correlator_r1(5, 0.3), std::invalid_argument);
}

TEST_CASE("r = 1 transfer output equals the closed form for N up to 40") {
    for (int n = 2; n <= 40; n += 2) {
        const auto spec = make_chain_spec(n, 1);
        for (double tau : {0.05, 0.3, 0.5236, 0.9, 1.4}) {
            const auto amps = exact::amplitude_sums(spec, tau);
            const double closed = exact::correlator_r1(n, tau);
            CHECK(std::abs(amps.e_value() - closed) < 1e-12);
            const double q_closed = exact::correlator_r1_q(n, tau);
            CHECK(amps.q_value(n) ==
                  doctest::Approx(q_closed).epsilon(1e-9).scale(std::abs(q_closed) + 1));
        }
    }
}

TEST_CASE("all-to-all sector path") {
    CHECK(exact::correlator_all_to_all(300, kPi / 4).e_value ==
          doctest::Approx(0.25).epsilon(0).scale(1).epsilon(1e-10));
    // odd chains carry no all-spin coherence
    for (double tau : {0.1, 0.4, 0.8})
        CHECK(exact::correlator_all_to_all(3, tau).e_value < 1e-14);
    // against the transfer window at N = 10
    const auto spec = make_chain_spec(10, 9);
    const auto sector = exact::correlator_all_to_all(10, 0.2);
    const auto transfer = exact::correlator(spec, 0.2, EngineBackend::transfer);
    CHECK(std::abs(sector.e_value - transfer.e_value) < 1e-12);
}

TEST_CASE("sector sum escalates below the double-precision floor") {
    // near tau = 0 the true correlator is ~tau^N; a plain double sum would
    // report rounding noise at q ~ N - 106 instead
    const auto pt = exact::correlator_all_to_all(128, 0.004);
    CHECK(pt.q_value < -100.0);
    CHECK(pt.q_value > -kInf);
    // and remains continuous across the escalation threshold
    const auto lo = exact::correlator_all_to_all(128, 0.00999);
    const auto hi = exact::correlator_all_to_all(128, 0.01001);
    CHECK(std::abs(lo.q_value - hi.q_value) < 0.5);
}

TEST_CASE("parity nullity for odd chains") {
    for (int n : {3, 5, 7})
        for (int r : {1, 2}) {
            const auto spec = make_chain_spec(n, r);
            for (int i = 0; i <= 10; ++i) {
                const double tau = kPi / 2 * i / 10.0;
                CHECK(exact::correlator(spec, tau, EngineBackend::transfer).e_value <= 1e-12);
            }
        }
}

TEST_CASE("the dynamics is pi-periodic in tau") {
    for (const auto& [n, r] : {std::pair{6, 2}, {8, 3}, {9, 4}}) {
        const auto spec = make_chain_spec(n, r);
        for (double tau : {0.17, 0.37, 0.81}) {
            const auto a = exact::correlator(spec, tau, EngineBackend::transfer);
            const auto b = exact::correlator(spec, tau + kPi, EngineBackend::transfer);
            CHECK(a.e_value == doctest::Approx(b.e_value).epsilon(1e-11).scale(1));
        }
    }
}

TEST_CASE("correlator never exceeds the GHZ ceiling") {
    for (const auto& [n, r] : {std::pair{8, 3}, {12, 5}, {13, 6}, {64, 63}})
        for (int i = 0; i <= 20; ++i) {
            const double tau = kPi / 2 * i / 20.0;
            CHECK(exact::correlator(make_chain_spec(n, r), tau).e_value <= 0.25 + 1e-12);
        }
}

TEST_CASE("error paths") {
    CHECK_THROWS_AS(exact::amplitude_sums(make_chain_spec(6, 2, Boundary::periodic), 0.1),
                    std::invalid_argument);
    CHECK_THROWS_AS(exact::amplitude_sums(make_chain_spec(300, 120), 0.1),
                    std::invalid_argument);
    CHECK_THROWS_AS(exact::correlator(make_chain_spec(9, 2), 0.1, EngineBackend::closed_form),
                    std::invalid_argument);
    CHECK_THROWS_AS(exact::backend_from_string("fancy"), std::invalid_argument);
    // periodic routes to the oracle automatically
    const auto spec = make_chain_spec(8, 2, Boundary::periodic);
    const auto pt = exact::correlator(spec, 0.35);
    CHECK(pt.e_value == doctest::Approx(oracle::correlator_bruteforce(spec, 0.35)).epsilon(1e-13));
}

TEST_CASE("q_value stays finite in log domain where e_value underflows") {
    // N = 300, r = 1 near the closed-form maximum: E ~ 2^-478
    const auto amps = exact::amplitude_sums(make_chain_spec(300, 1), 0.5236);
    const double q = amps.q_value(300);
    CHECK(q == doctest::Approx(exact::correlator_r1_q(300, 0.5236)).epsilon(1e-9).scale(500));
    CHECK(std::isfinite(q));
}
