#pragma once

// Exact rational arithmetic. Everything in the core library computes over Q;
// no floating point is used anywhere, because denominators carry meaning
// (they determine base-change exponents).

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace levelcontract {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Throws std::domain_error on den == 0. Result is normalized (den > 0, gcd 1).
Rational make_rational(long long num, long long den = 1);

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

// "p" when integral, "p/q" otherwise; q always positive.
std::string to_string(const Rational& r);

// Strict INT("/"INT)? syntax, optional leading '-'. Rejects everything else.
std::optional<Rational> parse_rational(std::string_view text);

// lcm of the denominators of `values`; 1 for an empty list.
Integer denominator_lcm(const std::vector<Rational>& values);

// Checked narrowing; throws std::overflow_error when out of range.
long long to_int64(const Integer& v);

}  // namespace levelcontract
