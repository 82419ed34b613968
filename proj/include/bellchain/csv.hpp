#pragma once

#include <optional>
#include <string>

namespace bellchain::csv {

/// Reals at 17 significant digits; infinities serialize as "-inf"/"inf",
/// NaN as "nan", so CSV output is locale- and platform-stable.
std::string format_real(double v);

/// Absent optionals serialize as an empty field.
std::string format_optional(std::optional<double> v);

}  // namespace bellchain::csv
