#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gwlc/rational.hpp"

namespace gwlc {

/// Truncated formal power series with exact rational coefficients.
/// A series of order N carries coefficients of x^0 .. x^N. Every operation
/// documents its order bookkeeping; results never claim coefficients beyond
/// what the inputs support.
class PowerSeries {
 public:
  PowerSeries() : coeffs_(1) {}
  explicit PowerSeries(std::vector<Rational> coeffs);

  static PowerSeries zero(std::size_t order);
  static PowerSeries constant(const Rational& value, std::size_t order);
  /// The monomial x, truncated at `order` (order >= 1).
  static PowerSeries identity(std::size_t order);

  std::size_t order() const { return coeffs_.size() - 1; }
  const Rational& operator[](std::size_t i) const { return coeffs_[i]; }
  Rational& operator[](std::size_t i) { return coeffs_[i]; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  /// Truncate (or zero-extend) to the given order.
  PowerSeries truncated(std::size_t order) const;

  bool operator==(const PowerSeries& other) const = default;

 private:
  std::vector<Rational> coeffs_;
};

// Arithmetic. Binary operations truncate to the smaller input order.
PowerSeries add(const PowerSeries& a, const PowerSeries& b);
PowerSeries sub(const PowerSeries& a, const PowerSeries& b);
PowerSeries mul(const PowerSeries& a, const PowerSeries& b);
PowerSeries scale(const PowerSeries& a, const Rational& factor);

/// Termwise derivative; order drops by one. Throws order_too_small on a
/// zero-order input.
PowerSeries derivative(const PowerSeries& a);

/// Exact reciprocal through the input order; requires a nonzero constant
/// term (throws zero_constant_term otherwise).
PowerSeries reciprocal(const PowerSeries& a);

/// a^n at the order of a (n = 0 gives the unit series).
PowerSeries pow(const PowerSeries& a, std::size_t n);

/// Index of the first differing coefficient up to max_order, if any.
std::optional<std::size_t> first_mismatch(const PowerSeries& a,
                                          const PowerSeries& b,
                                          std::size_t max_order);

}  // namespace gwlc
