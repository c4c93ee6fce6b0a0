#pragma once

#include <cstddef>
#include <functional>
#include <utility>

#include "gwlc/exact_laws.hpp"
#include "gwlc/offspring.hpp"
#include "gwlc/rational.hpp"
#include "gwlc/tree.hpp"

namespace gwlc {

/// Called once per enumerated tree with its exact probability weight
/// (product of p_degree over all vertices). The tree reference is only
/// valid during the call.
using TreeVisitor = std::function<void(const GWTree&, const Rational&)>;

/// Yields every ordered rooted tree with exactly ell leaves, at most
/// node_cap vertices, and all out-degrees in the support of dist —
/// in lexicographic order of the preorder degree sequence. Depth-first
/// prefix extension with four prunes: pending slots force at least one
/// leaf each (upper leaf bound), at least one vertex each (node bound),
/// the remaining node budget caps how many leaves can still appear
/// (lower leaf bound), and a degree that closes the encoding is skipped
/// unless it lands exactly on ell leaves.
void enumerate_trees(const OffspringDistribution& dist, std::size_t ell,
                     std::size_t node_cap, const TreeVisitor& visit);

/// Provably sufficient cap for p1 = 0 (internal vertices have >= 2
/// children, so V <= 2 ell - 1); heuristic 4 ell with explicit residual
/// reporting otherwise (unary chains make tree size unbounded).
std::size_t default_enumeration_cap(const OffspringDistribution& dist, std::size_t ell);

/// Brute-force conditional law: masses(t) = sum of weight * X(t)/V over
/// enumerated trees, normalized by the total enumerated weight (so masses
/// sum to exactly 1); residual = P(L = ell) - total weight, the exact
/// probability of trees beyond the cap (zero when p1 = 0 and
/// node_cap >= 2 ell - 1). Sets residual_flagged when a threshold is
/// given and exceeded (advisory).
ConditionalLaw oracle_conditional_law(const OffspringDistribution& dist, std::size_t ell,
                                      std::size_t node_cap,
                                      const Rational* max_residual = nullptr);

/// Brute-force joint mass: (sum of weight * X(t), residual as above).
/// Equals the closed-form joint mass exactly whenever residual is zero.
std::pair<Rational, Rational> oracle_joint_mass(const OffspringDistribution& dist,
                                                std::size_t ell, std::size_t t,
                                                std::size_t node_cap);

}  // namespace gwlc
