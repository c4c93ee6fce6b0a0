#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gwlc/offspring.hpp"
#include "gwlc/philox.hpp"
#include "gwlc/tree.hpp"

namespace gwlc {

/// Exact inverse-CDF degree sampling on the common-denominator grid:
/// a uniform integer r in [0, B) picks degree j with the exact probability
/// n_j / B. Rejection against a power-of-two mask keeps r unbiased. Falls
/// back to big-integer draws when B exceeds 64 bits.
class DegreeSampler {
 public:
  explicit DegreeSampler(const OffspringDistribution& dist);

  std::uint32_t draw(PhiloxStream& rng) const;

 private:
  bool small_ = true;
  std::uint64_t b64_ = 0;
  std::uint64_t mask_ = 0;
  std::vector<std::uint64_t> cum64_;  // cumulative numerators

  BigInt b_;
  std::vector<BigInt> cum_;
  std::size_t words_ = 0;        // 32-bit words per big draw
  std::uint32_t top_mask_ = 0;   // mask for the most significant word
};

/// Runs one branching process in depth-first order, appending out-degrees
/// until extinction. Returns the tree, or nullopt when the vertex count
/// would exceed node_cap (the overflow outcome; the partial tree is
/// discarded). Criticality is not required.
std::optional<GWTree> sample_tree(const OffspringDistribution& dist, PhiloxStream& rng,
                                  std::size_t node_cap);

std::optional<GWTree> sample_tree(const DegreeSampler& sampler, PhiloxStream& rng,
                                  std::size_t node_cap);

}  // namespace gwlc
