#pragma once

#include <string>

namespace hopfdde {

/// 17 significant digits, enough to round-trip any double.
std::string format_g17(double value);

/// Shortest representation that parses back to the same double.
std::string format_shortest(double value);

}  // namespace hopfdde
