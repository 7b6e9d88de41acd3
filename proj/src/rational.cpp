#include "wakemod/rational.hpp"

#include "wakemod/errors.hpp"

#include <cctype>
#include <cstdlib>

namespace wakemod {

Rational rational_from_decimal(std::string_view text) {
  auto fail = [&text]() -> Rational {
    throw ParseError("not a decimal number: '" + std::string(text) + "'");
  };

  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }

  std::int64_t mantissa = 0;
  int digits = 0;
  int frac_digits = 0;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c == '.') {
      if (seen_point) return fail();
      seen_point = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) return fail();
    if (digits >= 18) throw ParseError("too many digits: '" + std::string(text) + "'");
    mantissa = mantissa * 10 + (c - '0');
    ++digits;
    if (seen_point) ++frac_digits;
  }
  if (digits == 0) return fail();

  std::int64_t den = 1;
  for (int k = 0; k < frac_digits; ++k) den *= 10;
  return {negative ? -mantissa : mantissa, den};
}

std::string decimal_string(const Rational& r) {
  if (r.numerator() == 0) return "0";

  std::int64_t num = r.numerator();
  std::int64_t den = r.denominator();
  bool negative = num < 0;
  unsigned long long n = negative ? 0ull - static_cast<unsigned long long>(num)
                                  : static_cast<unsigned long long>(num);

  int twos = 0;
  int fives = 0;
  std::int64_t rest = den;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  if (rest != 1) {
    // Non-terminating decimal; keep it exact instead of rounding.
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
  }

  // Scale numerator so the denominator becomes 10^k.
  int k = twos > fives ? twos : fives;
  unsigned __int128 scaled = n;
  for (int j = 0; j < k - twos; ++j) scaled *= 2;
  for (int j = 0; j < k - fives; ++j) scaled *= 5;

  std::string digits;
  if (scaled == 0) digits = "0";
  while (scaled > 0) {
    digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(scaled % 10)));
    scaled /= 10;
  }
  while (static_cast<int>(digits.size()) <= k) digits.insert(digits.begin(), '0');

  std::string out;
  if (negative) out += '-';
  out += digits.substr(0, digits.size() - k);
  if (k > 0) {
    std::string frac = digits.substr(digits.size() - k);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) out += '.' + frac;
  }
  return out;
}

std::string decimal_string(const Rational& r, int places) {
  std::int64_t scale = 1;
  for (int k = 0; k < places; ++k) scale *= 10;

  const bool negative = r < Rational(0);
  const Rational magnitude = negative ? -r : r;
  const Rational scaled = magnitude * Rational(scale);
  // floor(scaled + 1/2) rounds half away from zero on the magnitude.
  const Rational shifted = scaled + Rational(1, 2);
  std::int64_t units = shifted.numerator() / shifted.denominator();

  std::string digits = std::to_string(units % scale);
  while (static_cast<int>(digits.size()) < places) digits.insert(digits.begin(), '0');

  std::string out;
  if (negative && units != 0) out += '-';
  out += std::to_string(units / scale);
  if (places > 0) out += '.' + digits;
  return out;
}

}  // namespace wakemod
