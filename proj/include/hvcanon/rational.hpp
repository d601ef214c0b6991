#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace hvcanon {

// All probabilities in this library are exact rationals in lowest terms;
// every comparison is exact equality, never tolerance-based.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Parses "num/den" or a bare integer. Throws std::invalid_argument on
// malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

// Canonical "num/den" rendering, e.g. "0/1", "1/2", "-3/4".
std::string format_rational(const Rational& value);

}  // namespace hvcanon
