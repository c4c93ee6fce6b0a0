#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace gwlc {

/// Ordered rooted tree in canonical preorder out-degree encoding.
/// A sequence is valid when the running sum of (degree - 1), started at 1,
/// stays positive at every proper prefix and reaches 0 exactly at the end
/// (Lukasiewicz-path condition).
struct GWTree {
  std::vector<std::uint32_t> degrees;

  std::size_t vertex_count() const { return degrees.size(); }
  std::size_t leaf_count() const;
};

bool is_valid_encoding(const std::vector<std::uint32_t>& degrees);

/// Per-tree summary: L, V, and the census X(t) = number of (full) subtrees
/// with exactly t leaves. counts[t] = X(t) for 1 <= t <= leaves;
/// counts[0] is unused. Sum of counts equals V (every vertex roots one
/// subtree); counts[leaves] >= 1 (the root).
struct SubtreeProfile {
  std::size_t leaves = 0;
  std::size_t vertices = 0;
  std::vector<std::size_t> counts;

  std::size_t count(std::size_t t) const { return t < counts.size() ? counts[t] : 0; }
};

/// Single reverse-preorder pass with an explicit stack; linear in V.
/// Throws malformed_encoding on an invalid degree sequence.
SubtreeProfile subtree_profile(const GWTree& tree);

}  // namespace gwlc
