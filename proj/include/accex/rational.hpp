#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace accex {

// Exact arithmetic for sample counts and seconds. Conversion to double
// happens only when rendering.
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Parses a plain decimal ("0.01", "3", "1e-3" is rejected) exactly.
// Throws Error(ParseError) on malformed text.
Rational parse_decimal(std::string_view text);

// Nearest rational with denominator 10^12; used to recover exact decimals
// from JSON doubles such as 0.01.
Rational from_double(double value);

// Rounds half away from zero for non-negative values (half-up).
Rational round_half_up(const Rational& r);

bool is_integral(const Rational& r);

// Fixed-point rendering with `decimals` digits, rounding half-up.
std::string format_fixed(const Rational& r, int decimals);

}  // namespace accex
