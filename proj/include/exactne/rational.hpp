#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace exactne {

using BigInt = boost::multiprecision::mpz_int;

/// Arbitrary-precision rational, always held in canonical form
/// (gcd(num, den) = 1, den > 0).
using Rational = boost::multiprecision::mpq_rational;

inline Rational make_rational(long long num, long long den = 1) { return Rational(num, den); }

double to_double(const Rational& r);

/// "n" for integers, "n/d" otherwise.
std::string to_string(const Rational& r);

/// Parses "INT" or "INT/INT" (optional leading '-'). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

}  // namespace exactne
