#pragma once

// Arbitrary-precision integers and rationals for the rate formulas and the
// enumeration oracle.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace bufshuf {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// C(n, k); zero when k < 0 or k > n.
BigInt binomial(std::int64_t n, std::int64_t k);
BigInt factorial(std::int64_t n);

/// Nearest-ish double (truncated to ~62 significant bits before rounding),
/// safe for numerators and denominators far beyond the double range.
double to_double(const Rational& value);

/// "numerator/denominator" in lowest terms, always with both parts ("1/1").
std::string to_string(const Rational& value);

}  // namespace bufshuf
