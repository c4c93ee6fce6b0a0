#include "gwlc/power_series.hpp"

#include <algorithm>
#include <optional>

#include "gwlc/errors.hpp"

namespace gwlc {

PowerSeries::PowerSeries(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.resize(1);
}

PowerSeries PowerSeries::zero(std::size_t order) {
  return PowerSeries(std::vector<Rational>(order + 1));
}

PowerSeries PowerSeries::constant(const Rational& value, std::size_t order) {
  auto s = zero(order);
  s[0] = value;
  return s;
}

PowerSeries PowerSeries::identity(std::size_t order) {
  if (order < 1) raise(errc::order_too_small, "x needs order >= 1");
  auto s = zero(order);
  s[1] = 1;
  return s;
}

PowerSeries PowerSeries::truncated(std::size_t order) const {
  std::vector<Rational> c(order + 1);
  const std::size_t keep = std::min(order, this->order());
  for (std::size_t i = 0; i <= keep; ++i) c[i] = coeffs_[i];
  return PowerSeries(std::move(c));
}

PowerSeries add(const PowerSeries& a, const PowerSeries& b) {
  const std::size_t n = std::min(a.order(), b.order());
  std::vector<Rational> c(n + 1);
  for (std::size_t i = 0; i <= n; ++i) c[i] = a[i] + b[i];
  return PowerSeries(std::move(c));
}

PowerSeries sub(const PowerSeries& a, const PowerSeries& b) {
  const std::size_t n = std::min(a.order(), b.order());
  std::vector<Rational> c(n + 1);
  for (std::size_t i = 0; i <= n; ++i) c[i] = a[i] - b[i];
  return PowerSeries(std::move(c));
}

PowerSeries mul(const PowerSeries& a, const PowerSeries& b) {
  const std::size_t n = std::min(a.order(), b.order());
  std::vector<Rational> c(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j <= n; ++j) {
      if (b[j] == 0) continue;
      c[i + j] += a[i] * b[j];
    }
  }
  return PowerSeries(std::move(c));
}

PowerSeries scale(const PowerSeries& a, const Rational& factor) {
  std::vector<Rational> c(a.order() + 1);
  for (std::size_t i = 0; i <= a.order(); ++i) c[i] = a[i] * factor;
  return PowerSeries(std::move(c));
}

PowerSeries derivative(const PowerSeries& a) {
  if (a.order() < 1) raise(errc::order_too_small, "derivative needs order >= 1");
  std::vector<Rational> c(a.order());
  for (std::size_t s = 0; s + 1 <= a.order(); ++s) {
    c[s] = Rational(s + 1) * a[s + 1];
  }
  return PowerSeries(std::move(c));
}

PowerSeries reciprocal(const PowerSeries& a) {
  if (a[0] == 0) raise(errc::zero_constant_term, "reciprocal needs c0 != 0");
  const std::size_t n = a.order();
  std::vector<Rational> c(n + 1);
  c[0] = Rational(1) / a[0];
  for (std::size_t m = 1; m <= n; ++m) {
    Rational acc(0);
    for (std::size_t i = 1; i <= m; ++i) acc += a[i] * c[m - i];
    c[m] = -acc / a[0];
  }
  return PowerSeries(std::move(c));
}

PowerSeries pow(const PowerSeries& a, std::size_t n) {
  PowerSeries result = PowerSeries::constant(Rational(1), a.order());
  for (std::size_t k = 0; k < n; ++k) result = mul(result, a);
  return result;
}

std::optional<std::size_t> first_mismatch(const PowerSeries& a,
                                          const PowerSeries& b,
                                          std::size_t max_order) {
  static const Rational zero(0);
  for (std::size_t i = 0; i <= max_order; ++i) {
    const Rational& x = i <= a.order() ? a[i] : zero;
    const Rational& y = i <= b.order() ? b[i] : zero;
    if (x != y) return i;
  }
  return std::nullopt;
}

}  // namespace gwlc
