#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace sqmult {

/// Exact rational number. All values and coefficients in this project are exact.
using Rational = mpq_class;

/// "p/q" or "p" in lowest terms.
std::string to_string(const Rational& value);

/// Parses "p", "-p", "p/q" or a terminating decimal such as "2.5".
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

}  // namespace sqmult
