#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace wakemod {

// Durations, powers and energies are kept as exact rationals. Chip rates are
// powers of two and every measured table value is a short decimal, so all
// derived quantities stay representable without rounding.
using Rational = boost::rational<std::int64_t>;

// Parses a plain decimal string ("6.88", "-72.62", "3") into an exact value.
// No exponent notation; throws ParseError on anything else.
Rational rational_from_decimal(std::string_view text);

// Renders r as an exact terminating decimal, e.g. 57/50 -> "1.14". Falls
// back to "n/d" when the reduced denominator has a prime factor other than
// 2 or 5.
std::string decimal_string(const Rational& r);

// Fixed-point rendering with exactly `places` fractional digits, rounding
// half away from zero (the convention the published figures follow).
std::string decimal_string(const Rational& r, int places);

inline double to_double(const Rational& r) {
  return boost::rational_cast<double>(r);
}

}  // namespace wakemod
