#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace gwlc {

/// Arbitrary-precision integer (GMP-backed).
using BigInt = boost::multiprecision::mpz_int;

/// Exact rational number (GMP-backed, always kept canonical).
using Rational = boost::multiprecision::mpq_rational;

/// Builds num/den in canonical form. Throws std::domain_error on den == 0.
Rational make_rational(const BigInt& num, const BigInt& den);

/// Parses "3/10", "-7", "0.25" or "2.5e-1" into an exact rational.
/// Decimal literals are read exactly (0.3 -> 3/10), never through binary
/// floating point. Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

/// Renders as "num/den", or just "num" when the denominator is 1.
std::string to_fraction_string(const Rational& value);

double to_double(const Rational& value);

BigInt binomial(std::uint64_t n, std::uint64_t k);
BigInt factorial(std::uint64_t n);

/// Product of odd integers down from n; defined as 1 for n <= 0.
BigInt odd_double_factorial(std::int64_t n);

BigInt int_pow(const BigInt& base, std::uint64_t exp);

}  // namespace gwlc
