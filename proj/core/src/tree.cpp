#include "gwlc/tree.hpp"

#include <algorithm>
#include <cstddef>

#include "gwlc/errors.hpp"

namespace gwlc {

std::size_t GWTree::leaf_count() const {
  return static_cast<std::size_t>(std::count(degrees.begin(), degrees.end(), 0u));
}

bool is_valid_encoding(const std::vector<std::uint32_t>& degrees) {
  if (degrees.empty()) return false;
  // Running count of open slots; must stay positive before the last vertex
  // and hit exactly zero after it.
  std::size_t pending = 1;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (pending == 0) return false;
    pending += degrees[i];
    pending -= 1;
  }
  return pending == 0;
}

SubtreeProfile subtree_profile(const GWTree& tree) {
  const auto& deg = tree.degrees;
  if (!is_valid_encoding(deg)) {
    raise(errc::malformed_encoding, "degree sequence is not a preorder tree encoding");
  }

  SubtreeProfile profile;
  profile.vertices = deg.size();
  profile.leaves = tree.leaf_count();
  profile.counts.assign(profile.leaves + 1, 0);

  // Right-to-left scan: the stack holds leaf counts of completed subtrees;
  // a vertex of degree d consumes its d children from the top.
  std::vector<std::size_t> stack;
  stack.reserve(deg.size());
  for (std::size_t i = deg.size(); i-- > 0;) {
    std::size_t d = deg[i];
    std::size_t leaves = 0;
    if (d == 0) {
      leaves = 1;
    } else {
      for (std::size_t c = 0; c < d; ++c) {
        leaves += stack.back();
        stack.pop_back();
      }
    }
    ++profile.counts[leaves];
    stack.push_back(leaves);
  }
  return profile;
}

}  // namespace gwlc
