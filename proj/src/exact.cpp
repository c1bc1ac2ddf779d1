#include "bufshuf/exact.hpp"

#include <algorithm>
#include <cmath>

namespace bufshuf {

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

BigInt factorial(std::int64_t n) {
  BigInt result = 1;
  for (std::int64_t i = 2; i <= n; ++i) result *= i;
  return result;
}

double to_double(const Rational& value) {
  BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  if (num == 0) return 0.0;
  const bool negative = num < 0;
  if (negative) num = -num;
  // Scale so the integer quotient carries 62 significant bits.
  const long shift = 62 - (static_cast<long>(msb(num)) - static_cast<long>(msb(den)));
  BigInt quotient = shift >= 0 ? BigInt((num << shift) / den) : BigInt(num / (den << -shift));
  const double mantissa = quotient.convert_to<double>();
  const double out = std::ldexp(mantissa, static_cast<int>(-shift));
  return negative ? -out : out;
}

std::string to_string(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  return num.str() + "/" + den.str();
}

}  // namespace bufshuf
