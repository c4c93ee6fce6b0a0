#include <doctest.h>

#include <vector>

#include "gwlc/errors.hpp"
#include "gwlc/power_series.hpp"
#include "gwlc/rational.hpp"

using namespace gwlc;

namespace {

PowerSeries series(std::initializer_list<int> ints) {
  std::vector<Rational> coeffs;
  for (int v : ints) coeffs.emplace_back(v);
  return PowerSeries(std::move(coeffs));
}

}  // namespace

TEST_CASE("factories and element access") {
  CHECK(PowerSeries().order() == 0);
  CHECK(PowerSeries::zero(3).order() == 3);
  CHECK(PowerSeries::zero(3)[2] == 0);
  const PowerSeries c = PowerSeries::constant(Rational(7) / 2, 2);
  CHECK(c[0] == Rational(7) / 2);
  CHECK(c[1] == 0);
  const PowerSeries x = PowerSeries::identity(4);
  CHECK(x[1] == 1);
  CHECK(x[0] == 0);
  CHECK(x[4] == 0);
  CHECK(c.truncated(1).order() == 1);
}

TEST_CASE("arithmetic follows the min-order truncation rule") {
  const PowerSeries a = series({1, 2, 3});
  const PowerSeries b = series({0, 1});
  CHECK(add(a, b).order() == 1);
  CHECK(add(a, b) == series({1, 3}));
  CHECK(sub(a, a) == PowerSeries::zero(2));
  CHECK(mul(a, b) == series({0, 1}));
  CHECK(scale(a, Rational(1) / 2)[2] == Rational(3) / 2);
}

TEST_CASE("multiplication convolves exactly") {
  // (1 + x)^2 = 1 + 2x + x^2
  const PowerSeries one_plus_x = series({1, 1, 0});
  CHECK(mul(one_plus_x, one_plus_x) == series({1, 2, 1}));
  CHECK(pow(one_plus_x, 2) == series({1, 2, 1}));
  // pow by repeated squaring matches naive products
  const PowerSeries p = series({1, 2, 3, 4, 5});
  PowerSeries naive = PowerSeries::constant(Rational(1), 4);
  for (int i = 0; i < 5; ++i) naive = mul(naive, p);
  CHECK(pow(p, 5) == naive);
}

TEST_CASE("derivative shifts and scales") {
  CHECK(derivative(series({5, 1, 2, 3})) == series({1, 4, 9}));
  CHECK_THROWS_AS(derivative(PowerSeries()), Error);
}

TEST_CASE("reciprocal inverts the geometric series") {
  // 1/(1 - x) = 1 + x + x^2 + ...
  const PowerSeries denom = series({1, -1, 0, 0, 0});
  const PowerSeries recip = reciprocal(denom);
  for (std::size_t i = 0; i <= 4; ++i) CHECK(recip[i] == 1);
  CHECK(mul(denom, recip) == PowerSeries::constant(Rational(1), 4));
  CHECK_THROWS_AS(reciprocal(series({0, 1})), Error);
  try {
    reciprocal(series({0, 1}));
  } catch (const Error& e) {
    CHECK(e.code() == errc::zero_constant_term);
  }
}

TEST_CASE("reciprocal roundtrips on a generic series") {
  const PowerSeries a = series({3, 1, 4, 1, 5, 9, 2, 6});
  CHECK(mul(a, reciprocal(a)) == PowerSeries::constant(Rational(1), a.order()));
}

TEST_CASE("first_mismatch locates the earliest differing coefficient") {
  const PowerSeries a = series({1, 2, 3, 4});
  PowerSeries b = a;
  CHECK_FALSE(first_mismatch(a, b, 3).has_value());
  b[2] += Rational(1) / 1000;
  const auto hit = first_mismatch(a, b, 3);
  REQUIRE(hit.has_value());
  CHECK(*hit == 2);
  CHECK_FALSE(first_mismatch(a, b, 1).has_value());
}
