#include <doctest.h>

#include <stdexcept>

#include "gwlc/rational.hpp"

using namespace gwlc;

TEST_CASE("make_rational canonicalizes sign and gcd") {
  CHECK(make_rational(BigInt(6), BigInt(4)) == Rational(3) / 2);
  CHECK(make_rational(BigInt(-6), BigInt(4)) == Rational(-3) / 2);
  CHECK(make_rational(BigInt(6), BigInt(-4)) == Rational(-3) / 2);
  CHECK(make_rational(BigInt(0), BigInt(7)) == 0);
  CHECK_THROWS_AS(make_rational(BigInt(1), BigInt(0)), std::domain_error);
}

TEST_CASE("parse_rational reads fractions, integers, and exact decimals") {
  CHECK(parse_rational("3/10") == Rational(3) / 10);
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(parse_rational("0.25") == Rational(1) / 4);
  CHECK(parse_rational("2.5e-1") == Rational(1) / 4);
  CHECK(parse_rational("0.3") == Rational(3) / 10);  // exact, not binary-float 0.3
  CHECK(parse_rational("0.8") == Rational(4) / 5);   // leading zero is not octal
  CHECK(parse_rational("0.0625") == Rational(1) / 16);
  CHECK(parse_rational("007/010") == Rational(7) / 10);
  CHECK(parse_rational("1e3") == Rational(1000));
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x/y"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("0x10"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1e5x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1e"), std::invalid_argument);
}

TEST_CASE("fraction rendering") {
  CHECK(to_fraction_string(Rational(5) / 3) == "5/3");
  CHECK(to_fraction_string(Rational(-4)) == "-4");
  CHECK(to_fraction_string(Rational(0)) == "0");
}

TEST_CASE("to_double rounds to nearest") {
  CHECK(to_double(Rational(1) / 2) == 0.5);
  CHECK(to_double(Rational(1) / 3) == doctest::Approx(1.0 / 3.0).epsilon(1e-16));
}

TEST_CASE("binomial and factorial closed values") {
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(6, 2) == 15);
  CHECK(binomial(5, 7) == 0);
  CHECK(binomial(40, 20) == BigInt("137846528820"));
  CHECK(factorial(0) == 1);
  CHECK(factorial(10) == 3628800);
  for (std::uint64_t n = 1; n <= 12; ++n) {
    for (std::uint64_t k = 0; k <= n; ++k) {
      CHECK(binomial(n, k) == binomial(n - 1, k) + (k > 0 ? binomial(n - 1, k - 1) : BigInt(0)));
    }
  }
}

TEST_CASE("odd double factorial, including the empty products") {
  CHECK(odd_double_factorial(-1) == 1);
  CHECK(odd_double_factorial(0) == 1);
  CHECK(odd_double_factorial(1) == 1);
  CHECK(odd_double_factorial(5) == 15);
  CHECK(odd_double_factorial(9) == 945);
  // (2l-1)!! = (2l)! / (2^l l!)
  for (std::int64_t l = 1; l <= 10; ++l) {
    const BigInt lhs = odd_double_factorial(2 * l - 1) * int_pow(BigInt(2), l) * factorial(l);
    CHECK(lhs == factorial(2 * l));
  }
}

TEST_CASE("integer powers") {
  CHECK(int_pow(BigInt(2), 0) == 1);
  CHECK(int_pow(BigInt(2), 40) == BigInt("1099511627776"));
  CHECK(int_pow(BigInt(-3), 3) == -27);
}
