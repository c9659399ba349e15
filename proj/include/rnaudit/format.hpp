#pragma once

#include <optional>
#include <string>

namespace rnaudit {

/// Six fractional digits; "-0.000000" is printed as "0.000000".
std::string fixed6(double x);

/// fixed6, or "n/a" for an undefined value.
std::string fixed6_or_na(const std::optional<double>& x);

/// Shortest round-trip form with at least one fractional digit: 0.1, 1.0, 0.15.
std::string short_decimal(double x);

}  // namespace rnaudit
