#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "gwlc/exact_laws.hpp"
#include "gwlc/offspring.hpp"

namespace gwlc {

/// One row of a Monte Carlo conditional-law estimate.
struct ConditionalEstimate {
  std::size_t ell = 0;
  std::size_t t = 0;
  double point = 0.0;    // mean over accepted trees of X(t)/V
  double std_err = 0.0;  // sample sd / sqrt(accepted)
  std::uint64_t accepted = 0;
  std::uint64_t trials = 0;
  std::uint64_t overflowed = 0;
  std::uint64_t seed = 0;
};

struct McOptions {
  std::size_t target_accepted = 10000;
  std::uint64_t seed = 0;
  std::size_t node_cap = 1000000;
  unsigned workers = 1;
  /// Trials budget = budget_factor * target_accepted / P(L = ell); the
  /// leaf probability is taken from leaf_prob when set, otherwise solved
  /// in double precision from the offspring law.
  std::uint64_t budget_factor = 64;
  std::optional<double> leaf_prob;
};

struct McResult {
  std::size_t ell = 0;
  std::uint64_t seed = 0;
  std::uint64_t accepted = 0;
  std::uint64_t trials = 0;
  std::uint64_t overflowed = 0;
  std::vector<ConditionalEstimate> estimates;  // t = 1..ell

  /// View as a ConditionalLaw (kind monte-carlo, float masses only).
  ConditionalLaw as_law() const;
};

/// Rejection-samples trees until target_accepted of them have L = ell and
/// averages X(t)/V per t — the estimator is exactly the defining
/// conditional expectation, so per-tree mass vectors sum to 1.
///
/// Deterministic for fixed (seed, workers): targets and trial budgets are
/// pre-split per worker, each worker draws from its own counter-based
/// stream (stream index = worker index), and partial sums merge in worker
/// order. When p1 = 0 the node cap tightens to 2 ell - 1, which makes
/// rejection exact (larger trees cannot have ell leaves); otherwise
/// overflowed counts the discarded over-cap trees for bias auditing.
///
/// Criticality is not required (subcritical laws sample fine). Throws
/// zero_accepted when the whole trials budget yields no acceptance.
McResult mc_conditional_law(const OffspringDistribution& dist, std::size_t ell,
                            const McOptions& options);

}  // namespace gwlc
