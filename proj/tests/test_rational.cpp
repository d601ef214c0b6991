#include <doctest.h>

#include <stdexcept>

#include "hvcanon/rational.hpp"

using hvcanon::Rational;
using hvcanon::format_rational;
using hvcanon::parse_rational;

TEST_CASE("parsing reduces and round-trips") {
  CHECK(parse_rational("1/2") == Rational(1, 2));
  CHECK(parse_rational("2/4") == Rational(1, 2));
  CHECK(format_rational(parse_rational("2/4")) == "1/2");
  CHECK(parse_rational("3") == Rational(3));
  CHECK(format_rational(Rational(3)) == "3/1");
  CHECK(parse_rational("0/7") == Rational(0));
  CHECK(format_rational(Rational(0)) == "0/1");
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
  CHECK(format_rational(Rational(-1, 2)) == "-1/2");
}

TEST_CASE("parsing handles values beyond machine words") {
  const std::string big = "123456789012345678901234567890";
  Rational value = parse_rational(big + "/3");
  CHECK(format_rational(value) == "41152263004115226300411522630/1");
}

TEST_CASE("malformed text is rejected") {
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/-2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("a/2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/2/3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(" 1/2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("/2"), std::invalid_argument);
}

TEST_CASE("arithmetic is exact") {
  Rational third(1, 3);
  CHECK(third + third + third == Rational(1));
  CHECK(Rational(1, 10) + Rational(2, 10) == Rational(3, 10));
}
