#include "levelcontract/rational.hpp"

#include <boost/multiprecision/integer.hpp>

#include <cctype>
#include <limits>
#include <stdexcept>

namespace levelcontract {

Rational make_rational(long long num, long long den) {
  if (den == 0) {
    throw std::domain_error("rational with zero denominator");
  }
  Rational r(num);
  r /= den;
  return r;
}

std::string to_string(const Rational& r) {
  std::string out = numerator(r).str();
  if (denominator(r) != 1) {
    out += '/';
    out += denominator(r).str();
  }
  return out;
}

std::optional<Rational> parse_rational(std::string_view text) {
  auto parse_int = [](std::string_view s) -> std::optional<Integer> {
    if (s.empty()) return std::nullopt;
    std::size_t i = 0;
    bool negative = false;
    if (s[0] == '-') {
      negative = true;
      i = 1;
    }
    if (i == s.size()) return std::nullopt;
    Integer value = 0;
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
      value = value * 10 + (s[i] - '0');
    }
    return negative ? Integer(-value) : value;
  };

  const std::size_t slash = text.find('/');
  if (slash == std::string_view::npos) {
    auto num = parse_int(text);
    if (!num) return std::nullopt;
    return Rational(*num);
  }
  auto num = parse_int(text.substr(0, slash));
  auto den = parse_int(text.substr(slash + 1));
  if (!num || !den || *den == 0) return std::nullopt;
  Rational r(*num);
  r /= Rational(*den);
  return r;
}

Integer denominator_lcm(const std::vector<Rational>& values) {
  Integer result = 1;
  for (const Rational& v : values) {
    result = boost::multiprecision::lcm(result, denominator(v));
  }
  return result;
}

long long to_int64(const Integer& v) {
  static const Integer lo = std::numeric_limits<long long>::min();
  static const Integer hi = std::numeric_limits<long long>::max();
  if (v < lo || v > hi) {
    throw std::overflow_error("integer out of 64-bit range: " + v.str());
  }
  return v.convert_to<long long>();
}

}  // namespace levelcontract
