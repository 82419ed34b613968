#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace bellchain {

/// Complex amplitude stored as value * 2^exponent with |value| kept O(1),
/// so quantities as small as 2^{-1.6 N} survive at N ~ hundreds of spins.
struct ScaledAmplitude {
    std::complex<double> value{0.0, 0.0};
    double exponent = 0.0;  // base-2

    static ScaledAmplitude zero() { return {}; }

    bool is_zero() const { return value == std::complex<double>(0.0, 0.0); }

    double log2_abs() const {
        if (is_zero()) return -std::numeric_limits<double>::infinity();
        return std::log2(std::abs(value)) + exponent;
    }

    double log2_abs2() const { return 2.0 * log2_abs(); }

    /// Collapse to a plain complex; under/overflows if the exponent is extreme.
    std::complex<double> to_complex() const { return value * std::exp2(exponent); }
};

}  // namespace bellchain
