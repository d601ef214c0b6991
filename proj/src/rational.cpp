#include "hvcanon/rational.hpp"

#include <stdexcept>

namespace hvcanon {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && s.front() == '-') {
    negative = true;
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  }
  BigInt value{std::string(s)};
  return negative ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text, text));
  }
  BigInt num = parse_integer(text.substr(0, slash), text);
  std::string_view den_part = text.substr(slash + 1);
  if (!all_digits(den_part)) {
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  }
  BigInt den{std::string(den_part)};
  if (den == 0) {
    throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  }
  return Rational(num) / Rational(den);
}

std::string format_rational(const Rational& value) {
  return numerator(value).str() + "/" + denominator(value).str();
}

}  // namespace hvcanon
