#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wakemod/errors.hpp"
#include "wakemod/rational.hpp"

#include <cstdint>
#include <random>
#include <string>

using namespace wakemod;

TEST_CASE("decimal parsing is exact") {
  CHECK(rational_from_decimal("6.88") == Rational(688, 100));
  CHECK(rational_from_decimal("3") == Rational(3));
  CHECK(rational_from_decimal("-72.62") == Rational(-7262, 100));
  CHECK(rational_from_decimal("0.01") == Rational(1, 100));
  CHECK(rational_from_decimal("+2.5") == Rational(5, 2));
  CHECK(rational_from_decimal("105.88") == Rational(10588, 100));
  CHECK(rational_from_decimal("0.0") == Rational(0));
  CHECK(rational_from_decimal(".5") == Rational(1, 2));
  CHECK(rational_from_decimal("7.") == Rational(7));
}

TEST_CASE("malformed decimals are rejected") {
  CHECK_THROWS_AS(rational_from_decimal(""), ParseError);
  CHECK_THROWS_AS(rational_from_decimal("."), ParseError);
  CHECK_THROWS_AS(rational_from_decimal("-"), ParseError);
  CHECK_THROWS_AS(rational_from_decimal("1.2.3"), ParseError);
  CHECK_THROWS_AS(rational_from_decimal("abc"), ParseError);
  CHECK_THROWS_AS(rational_from_decimal("1e5"), ParseError);
  CHECK_THROWS_AS(rational_from_decimal("1 2"), ParseError);
  CHECK_THROWS_AS(rational_from_decimal("1234567890123456789"), ParseError);
}

TEST_CASE("decimal rendering terminates exactly for 2- and 5-smooth denominators") {
  CHECK(decimal_string(Rational(57, 50)) == "1.14");
  CHECK(decimal_string(Rational(3, 64)) == "0.046875");
  CHECK(decimal_string(Rational(0)) == "0");
  CHECK(decimal_string(Rational(-1, 2)) == "-0.5");
  CHECK(decimal_string(Rational(25)) == "25");
  CHECK(decimal_string(Rational(1, 10000000)) == "0.0000001");
  // Non-terminating decimals stay exact as fractions.
  CHECK(decimal_string(Rational(1, 3)) == "1/3");
  CHECK(decimal_string(Rational(22, 7)) == "22/7");
}

TEST_CASE("fixed-point rendering rounds half away from zero") {
  CHECK(decimal_string(rational_from_decimal("72.575"), 2) == "72.58");
  CHECK(decimal_string(rational_from_decimal("1.32865"), 2) == "1.33");
  CHECK(decimal_string(rational_from_decimal("42.3015625"), 2) == "42.30");
  CHECK(decimal_string(rational_from_decimal("24.0015625"), 2) == "24.00");
  CHECK(decimal_string(rational_from_decimal("17.749375"), 2) == "17.75");
  CHECK(decimal_string(rational_from_decimal("-1.005"), 2) == "-1.01");
  CHECK(decimal_string(Rational(1, 3), 2) == "0.33");
  CHECK(decimal_string(Rational(2, 3), 2) == "0.67");
  CHECK(decimal_string(Rational(5), 0) == "5");
  CHECK(decimal_string(Rational(199, 2), 0) == "100");
}

TEST_CASE("parse/render roundtrip over random terminating decimals") {
  std::mt19937_64 rng(20240811);
  for (int i = 0; i < 1000; ++i) {
    const std::int64_t num = static_cast<std::int64_t>(rng() % 1000000) - 500000;
    std::int64_t den = 1;
    for (std::uint64_t k = rng() % 7; k > 0; --k) den *= 2;
    for (std::uint64_t k = rng() % 7; k > 0; --k) den *= 5;
    const Rational r(num, den);
    CAPTURE(num);
    CAPTURE(den);
    CHECK(rational_from_decimal(decimal_string(r)) == r);
  }
}
