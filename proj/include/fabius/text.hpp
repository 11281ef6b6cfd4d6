#pragma once

#include <string>
#include <string_view>

#include "fabius/rational.hpp"

namespace fabius {

/// Reads an exact rational from user input. Accepted forms:
///   "3/8", "-7"             canonical or unreduced fractions
///   "0.375", "1e-30", ".5"  decimals, converted exactly
///   "2^-7", "-2^3"          signed powers of two
/// Throws std::invalid_argument on anything else.
Rational parse_number(std::string_view text);

/// r rounded half away from zero to `digits` places after the point.
std::string format_decimal(const Rational& r, unsigned digits);

}  // namespace fabius
