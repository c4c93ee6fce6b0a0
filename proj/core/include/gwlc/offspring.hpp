#pragma once

#include <cstddef>
#include <vector>

#include "gwlc/rational.hpp"

namespace gwlc {

/// A finite-support offspring law {p_j} with exact rational probabilities
/// and the derived constants used throughout the library. Immutable after
/// construction; safe to share across threads.
struct OffspringDistribution {
  /// probs[j] = p_j, trailing zeros trimmed so probs.back() > 0.
  std::vector<Rational> probs;
  Rational mean;      // sum_j j p_j
  Rational variance;  // sum_j j^2 p_j - mean^2
  bool critical = false;

  /// sqrt(p0 / (2 pi sigma^2)); the l^{-3/2} leaf-law scale constant.
  double gamma_leaf = 0.0;
  /// sqrt(2 p0) / sigma = 2 sqrt(pi) * gamma_leaf; the square-root
  /// singularity coefficient of the leaf generating function.
  double gamma_series = 0.0;

  /// Common denominator B and integer weights n_j = p_j * B; the exact
  /// solver and the degree sampler work on these.
  BigInt common_denominator;
  std::vector<BigInt> numerators;

  std::size_t max_degree() const { return probs.size() - 1; }
  const Rational& prob(std::size_t j) const;
  bool unary_free() const;  // p_1 == 0

  /// Cache key; distributions with equal probs share solver state.
  std::string key() const;

  static OffspringDistribution binary();  // p0 = p2 = 1/2
  static OffspringDistribution p1demo();  // 3/10, 4/10, 3/10
};

/// Validates {p_j} and populates every derived field.
/// Throws Error with code negative_probability, sum_not_one,
/// zero_extinction, degenerate_unary, or not_critical (the latter only when
/// require_critical is set; subcritical laws are admitted for simulation).
OffspringDistribution validate_offspring(std::vector<Rational> probs,
                                         bool require_critical);

/// Removes the unary mass: p'_1 = 0, p'_j = p_j / (1 - p_1) otherwise.
/// Preserves criticality exactly. Throws degenerate_unary if p_1 = 1.
OffspringDistribution reduce_distribution(const OffspringDistribution& d);

}  // namespace gwlc
