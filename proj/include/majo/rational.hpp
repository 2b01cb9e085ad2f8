#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace majo {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Parses `p/q`, an integer, or a terminating decimal such as `0.25`.
/// Throws Error(ParseError) on anything else, including a zero denominator.
Rational parse_rational(std::string_view text);

/// Lowest-terms `p/q`, or just `p` when the denominator is 1.
std::string to_string(const Rational& value);

/// Largest rational r such that a/r and b/r are both integers. gcd(0, b) = |b|.
Rational rational_gcd(const Rational& a, const Rational& b);

inline Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

}  // namespace majo
