#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gwlc/offspring.hpp"
#include "gwlc/power_series.hpp"

namespace gwlc {

/// Coefficient engine for the leaf-count generating function
///   f(x) = sum_{j>=1} p_j f(x)^j + p0 x,
/// the unique power-series fixed point with f(0) = 0. The coefficient of
/// x^ell is P(L = ell), the probability that the extinction tree has ell
/// leaves.
///
/// With p_j = n_j / B and M = B - n1, every coefficient has the form
/// a_ell / M^(2 ell - 1) with integer a_ell, so the recursion
///   (1 - p1) c_ell = [x^ell] sum_{j>=2} p_j f^j  (+ p0 when ell = 1)
/// runs entirely on big integers; rationals are materialized only on
/// extraction. Power arrays f^j are maintained incrementally, which keeps
/// the whole run at O(D N^2) integer multiplications.
///
/// Growth is single-writer; concurrent readers must synchronize externally
/// (see LawContext).
class LeafSeriesEngine {
 public:
  /// Requires a validated law with p1 < 1. Criticality is not needed for
  /// the recursion itself; callers that promise P(L=ell) semantics on
  /// critical laws enforce it at their own boundary.
  explicit LeafSeriesEngine(OffspringDistribution dist);

  void grow(std::size_t order);
  std::size_t order() const { return a_.size() - 1; }
  const OffspringDistribution& dist() const { return dist_; }

  /// P(L = ell) exactly. Requires ell <= order().
  Rational coefficient(std::size_t ell) const;

  /// [x^ell] f f' / p0  =  E[V 1(L = ell)], V the vertex count.
  Rational vertex_mass(std::size_t ell);

  /// E[V (V-1) 1(L = ell)], assembled from f'' f^2 and (f')^2 f.
  Rational vertex_pair_mass(std::size_t ell);

  /// Scaled integer numerator a_ell (coefficient = a_ell / M^(2 ell - 1)).
  const BigInt& scaled_numerator(std::size_t ell) const { return a_[ell]; }
  const BigInt& scale_base() const { return m_; }

 private:
  void ensure_vertex_conv(std::size_t order);

  OffspringDistribution dist_;
  BigInt m_;  // B - n1
  // weights_[k] = n_{k+2} * M^k for supported j = k+2 >= 2
  std::vector<BigInt> weights_;
  std::vector<BigInt> a_;                    // a_[0] = 0
  std::vector<std::vector<BigInt>> powers_;  // powers_[k] = coeffs of Fhat^(k+2)
  std::vector<BigInt> g_;                    // [x^m] f f' = g_[m] / M^(2m)
};

/// Double-precision mirror of LeafSeriesEngine for orders where exact
/// arithmetic is too expensive. The recursion has nonnegative terms only,
/// so relative error stays near machine precision.
class LeafSeriesEngineF64 {
 public:
  explicit LeafSeriesEngineF64(const OffspringDistribution& dist);

  void grow(std::size_t order);
  std::size_t order() const { return c_.size() - 1; }

  /// P(L = ell) approximately. Requires ell <= order().
  double coefficient(std::size_t ell) const { return c_[ell]; }

 private:
  std::vector<double> probs_;
  std::vector<double> c_;
  std::vector<std::vector<double>> powers_;
};

/// Solves the fixed point through the given order (>= 1) and returns the
/// series with exact rational coefficients; coefficient ell is P(L = ell).
/// Throws not_critical for non-critical laws.
PowerSeries solve_leaf_series(const OffspringDistribution& d, std::size_t order);

/// Outcome of checking the two implicit-differentiation identities
///   sum_j j p_j f^(j-1)      = 1 - p0 / f'
///   sum_j j(j-1) p_j f^(j-2) = p0 f'' / f'^3
/// through the maximal safe orders (one and two derivatives lost).
struct IdentityReport {
  std::size_t requested_order = 0;
  std::size_t first_checked_order = 0;
  std::size_t second_checked_order = 0;
  std::optional<std::size_t> first_mismatch_index;
  std::optional<std::size_t> second_mismatch_index;

  bool agrees() const {
    return !first_mismatch_index.has_value() && !second_mismatch_index.has_value();
  }
};

/// Solves f for d and checks both identities. Requires order >= 3.
IdentityReport verify_gf_identities(const OffspringDistribution& d, std::size_t order);

/// Same check against a caller-supplied series (for fault injection).
IdentityReport verify_gf_identities(const OffspringDistribution& d, const PowerSeries& f);

}  // namespace gwlc
