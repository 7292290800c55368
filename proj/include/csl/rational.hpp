#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <string>

#include "csl/errors.hpp"

namespace csl {

/// Exact arbitrary-precision rational. Always stored in lowest terms with a
/// positive denominator; every probability and distance in the library is one.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline Rational rat(long n, long d = 1) { return Rational(n, d); }

inline std::strong_ordering cmp(const Rational& a, const Rational& b) {
  if (a < b) return std::strong_ordering::less;
  if (a == b) return std::strong_ordering::equal;
  return std::strong_ordering::greater;
}

/// Serialized form used everywhere rationals cross an external interface.
inline std::string rat_str(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

/// Accepts "num/den" or a bare integer; exact, no floats involved.
Rational parse_rational(const std::string& text);

inline bool is_probability(const Rational& p) { return p > 0 && p < 1; }

}  // namespace csl
