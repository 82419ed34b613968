#include "bellchain/csv.hpp"

#include <cmath>
#include <cstdio>

namespace bellchain::csv {

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_optional(std::optional<double> v) {
    return v ? format_real(*v) : std::string{};
}

}  // namespace bellchain::csv
