#include "accex/rational.hpp"

#include <cctype>
#include <cmath>

#include "accex/error.hpp"

namespace accex {

namespace mp = boost::multiprecision;

Rational parse_decimal(std::string_view text) {
  auto fail = [&] {
    return Error(ErrorCode::ParseError,
                 "not a decimal number: '" + std::string(text) + "'");
  };
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  mp::cpp_int numerator = 0;
  mp::cpp_int denominator = 1;
  bool any_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (ch == '.' && !seen_point) {
      seen_point = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(ch))) throw fail();
    any_digit = true;
    numerator = numerator * 10 + (ch - '0');
    if (seen_point) denominator *= 10;
  }
  if (!any_digit) throw fail();
  Rational value(numerator, denominator);
  return negative ? Rational(-value) : value;
}

Rational from_double(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::ParseError, "non-finite number");
  }
  const long double scaled = std::round(static_cast<long double>(value) * 1e12L);
  return Rational(mp::cpp_int(static_cast<long long>(scaled)),
                  mp::cpp_int(1000000000000LL));
}

Rational round_half_up(const Rational& r) {
  const bool negative = r < 0;
  const Rational magnitude = negative ? Rational(-r) : r;
  const mp::cpp_int num = mp::numerator(magnitude);
  const mp::cpp_int den = mp::denominator(magnitude);
  mp::cpp_int rounded = (2 * num + den) / (2 * den);
  return negative ? Rational(-rounded) : Rational(rounded);
}

bool is_integral(const Rational& r) { return mp::denominator(r) == 1; }

std::string format_fixed(const Rational& r, int decimals) {
  mp::cpp_int scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  const Rational scaled = round_half_up(r * scale);
  mp::cpp_int units = mp::numerator(scaled);
  const bool negative = units < 0;
  if (negative) units = -units;

  std::string digits = units.str();
  if (decimals > 0) {
    if (digits.size() <= static_cast<std::size_t>(decimals)) {
      digits.insert(0, static_cast<std::size_t>(decimals) + 1 - digits.size(), '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(decimals), ".");
  }
  return negative ? "-" + digits : digits;
}

}  // namespace accex
