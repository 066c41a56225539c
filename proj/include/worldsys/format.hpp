#pragma once

#include <string>

namespace worldsys {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

/// Fixed-precision text for side-by-side tables (`digits` significant digits).
std::string format_significant(double value, int digits);

}  // namespace worldsys
