#include "gwlc/enumerate.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gwlc/errors.hpp"
#include "gwlc/leaf_series.hpp"

namespace gwlc {

void enumerate_trees(const OffspringDistribution& dist, std::size_t ell,
                     std::size_t node_cap, const TreeVisitor& visit) {
  if (ell < 1) raise(errc::invalid_argument, "ell must be >= 1");
  if (node_cap < 1) raise(errc::invalid_argument, "node_cap must be >= 1");

  std::vector<std::uint32_t> support;
  std::vector<Rational> probs;
  for (std::size_t j = 0; j <= dist.max_degree(); ++j) {
    if (dist.numerators[j] != 0) {
      support.push_back(static_cast<std::uint32_t>(j));
      probs.push_back(dist.prob(j));
    }
  }

  GWTree tree;
  std::vector<std::size_t> choice;  // support index placed at each position
  Rational weight(1);
  std::size_t pending = 1;
  std::size_t leaves = 0;

  // Pops the most recent placement and returns the next support index to
  // try at that position.
  auto backtrack = [&]() -> std::size_t {
    std::uint32_t j = tree.degrees.back();
    tree.degrees.pop_back();
    std::size_t k = choice.back();
    choice.pop_back();
    weight /= probs[k];
    pending += 1;
    pending -= j;
    if (j == 0) --leaves;
    return k + 1;
  };

  std::size_t k = 0;
  for (;;) {
    bool placed = false;
    for (; k < support.size(); ++k) {
      std::uint32_t j = support[k];
      std::size_t new_pending = pending + j - 1;
      std::size_t new_leaves = leaves + (j == 0 ? 1 : 0);
      std::size_t new_nodes = tree.degrees.size() + 1;
      if (new_leaves + new_pending > ell) continue;
      if (new_nodes + new_pending > node_cap) continue;
      if (new_leaves + (node_cap - new_nodes) < ell) continue;
      if (new_pending == 0 && new_leaves != ell) continue;  // would complete short

      tree.degrees.push_back(j);
      choice.push_back(k);
      weight *= probs[k];
      pending = new_pending;
      leaves = new_leaves;
      placed = true;
      break;
    }

    if (placed && pending > 0) {
      k = 0;  // extend at the next position
      continue;
    }
    if (placed) {
      visit(tree, weight);  // the prunes leave only complete ell-leaf trees
      k = backtrack();
      continue;
    }
    if (tree.degrees.empty()) return;
    k = backtrack();
  }
}

std::size_t default_enumeration_cap(const OffspringDistribution& dist, std::size_t ell) {
  return dist.prob(1) == 0 ? 2 * ell - 1 : 4 * ell;
}

namespace {

Rational capped_leaf_probability(const OffspringDistribution& dist, std::size_t ell) {
  LeafSeriesEngine engine(dist);
  engine.grow(ell);
  return engine.coefficient(ell);
}

}  // namespace

ConditionalLaw oracle_conditional_law(const OffspringDistribution& dist, std::size_t ell,
                                      std::size_t node_cap, const Rational* max_residual) {
  ConditionalLaw law;
  law.ell = ell;
  law.kind = LawKind::oracle_enumeration;
  law.exact = true;
  law.masses.assign(ell, Rational(0));
  law.masses_f64.assign(ell, 0.0);

  Rational total(0);
  enumerate_trees(dist, ell, node_cap, [&](const GWTree& tree, const Rational& weight) {
    SubtreeProfile profile = subtree_profile(tree);
    total += weight;
    for (std::size_t t = 1; t <= profile.leaves; ++t) {
      if (profile.counts[t] == 0) continue;
      law.masses[t - 1] +=
          weight * make_rational(BigInt(profile.counts[t]), BigInt(profile.vertices));
    }
  });

  if (total != 0) {
    for (std::size_t t = 1; t <= ell; ++t) {
      law.masses[t - 1] /= total;
      law.masses_f64[t - 1] = to_double(law.masses[t - 1]);
    }
  }
  law.residual = capped_leaf_probability(dist, ell) - total;
  law.residual_f64 = to_double(law.residual);
  if (max_residual != nullptr && law.residual > *max_residual) law.residual_flagged = true;
  return law;
}

std::pair<Rational, Rational> oracle_joint_mass(const OffspringDistribution& dist,
                                                std::size_t ell, std::size_t t,
                                                std::size_t node_cap) {
  if (t < 1 || t > ell) raise(errc::out_of_range, "need 1 <= t <= ell");
  Rational mass(0);
  Rational total(0);
  enumerate_trees(dist, ell, node_cap, [&](const GWTree& tree, const Rational& weight) {
    SubtreeProfile profile = subtree_profile(tree);
    total += weight;
    if (profile.count(t) > 0) mass += weight * Rational(profile.count(t));
  });
  return {mass, capped_leaf_probability(dist, ell) - total};
}

}  // namespace gwlc
