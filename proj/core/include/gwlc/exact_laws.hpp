#pragma once

#include <cstddef>
#include <mutex>
#include <utility>
#include <vector>

#include "gwlc/leaf_series.hpp"
#include "gwlc/offspring.hpp"
#include "gwlc/rational.hpp"

namespace gwlc {

enum class LawKind { exact_binary, plugin, oracle_enumeration, monte_carlo };
const char* law_kind_name(LawKind kind);

/// Distribution of the leaf count of a uniformly random subtree,
/// conditioned on the whole tree having ell leaves. Masses are indexed by
/// t = 1..ell (stored at t-1). Exact producers fill `masses` and set
/// `exact`; every producer fills `masses_f64`. The residual is the mass
/// not covered by the entries: zero for exact laws, the signed
/// normalization gap for the plug-in law, and the weight of trees beyond
/// the node cap for enumeration.
struct ConditionalLaw {
  std::size_t ell = 0;
  LawKind kind = LawKind::plugin;
  bool exact = false;
  std::vector<Rational> masses;
  std::vector<double> masses_f64;
  Rational residual = Rational(0);
  double residual_f64 = 0.0;
  /// Advisory: set by the enumeration oracle when the residual exceeds a
  /// caller-supplied threshold.
  bool residual_flagged = false;

  const Rational& mass(std::size_t t) const { return masses[t - 1]; }
  double mass_f64(std::size_t t) const { return masses_f64[t - 1]; }
};

/// Exact conditional moments of the vertex count V given L = ell.
struct VMoments {
  std::size_t ell = 0;
  Rational mean;      // E[V | L = ell]
  Rational second;    // E[V^2 | L = ell]
  Rational variance;  // second - mean^2
};

enum class JointMode { closed, recursion };

struct LawPolicy {
  /// Largest ell at which the plug-in law and the tail deficit stay in
  /// exact rational arithmetic; above it they use the double-precision
  /// solver. Everything else (leaf law, joint masses, V-moments) is
  /// always exact.
  std::size_t exact_max_order = 2048;
};

/// Per-distribution computation context: owns the shared series engines
/// and serves every exact-law query. All methods are thread-safe
/// (single mutex; growth is single-writer). Requires a critical law.
class LawContext {
 public:
  explicit LawContext(OffspringDistribution dist, LawPolicy policy = LawPolicy{});

  const OffspringDistribution& dist() const { return dist_; }
  const LawPolicy& policy() const { return policy_; }

  /// P(L = ell), exact. ell >= 1.
  Rational leaf_law(std::size_t ell);

  /// P(L = ell) in double precision (cheap at large ell).
  double leaf_law_f64(std::size_t ell);

  /// (double-factorial form, power-law form): two real approximations of
  /// P(L = ell). First: gamma_series * (2 ell - 3)!! / (2^ell ell!),
  /// computed as an exact big-integer ratio converted at the last step.
  /// Second: gamma_leaf / ell^(3/2).
  std::pair<double, double> leaf_law_asymptotic(std::size_t ell) const;

  /// E[X(t) * 1(L = ell)], exact; X(t) = number of subtrees with t
  /// leaves. Closed mode: P(L=t) * (ell-t+1) * P(L=ell-t+1) / p0.
  /// Recursion mode: convolution against the series 1 - p0/f' with base
  /// value P(L=t)/(1-p1). Both agree exactly.
  Rational joint_mass(std::size_t ell, std::size_t t, JointMode mode);

  /// E[X(t) | L = ell] = joint_mass(ell, t) / P(L = ell), exact.
  Rational expected_subtree_count(std::size_t ell, std::size_t t);

  Rational vertex_mass(std::size_t ell);  // E[V * 1(L = ell)], exact
  VMoments v_conditional_moments(std::size_t ell);

  /// The plug-in approximation of P(Lsub = t | L = ell):
  /// mass(t) = (1-p1) (ell-t+1) P(L=ell-t+1) P(L=t) / (ell P(L=ell)).
  /// Signed residual 1 - sum(masses); it is an asymptotic main term, not
  /// a normalized law.
  ConditionalLaw plugin_conditional_law(std::size_t ell);

  Rational plugin_mass(std::size_t ell, std::size_t t);  // exact single mass
  double plugin_mass_f64(std::size_t ell, std::size_t t);

  /// Plug-in estimate of P(Lsub > sqrt(ell)/log^2(ell) | L = ell)
  /// (natural log): 1 minus the plug-in masses at t <= floor(tau).
  /// ell >= 3 so that log^2(ell) > 1.
  double tail_deficit(std::size_t ell);

 private:
  Rational leaf_unlocked(std::size_t ell);
  Rational joint_closed_unlocked(std::size_t ell, std::size_t t);
  Rational plugin_mass_unlocked(std::size_t ell, std::size_t t);
  double plugin_mass_f64_unlocked(std::size_t ell, std::size_t t);

  mutable std::mutex mu_;
  OffspringDistribution dist_;
  LawPolicy policy_;
  LeafSeriesEngine engine_;
  LeafSeriesEngineF64 engine_f64_;
};

/// P(Lsub = t | L = ell) for the binary law (p0 = p2 = 1/2), closed form:
/// t/(ell(2 ell - 1)) * C(ell,t)^2 / C(2(ell-1), 2(t-1)). Exact.
Rational binary_subtree_law(std::size_t ell, std::size_t t);

/// Equivalent product form: (ell/(2 ell - 1)) * C(2(t-1),t-1) *
/// C(2(ell-t),ell-t) / C(2(ell-1),ell-1) equals t * binary_subtree_law.
Rational binary_mean_leafcount_term(std::size_t ell, std::size_t t);

/// (exact E[Lsub | L = ell], asymptote sqrt(pi ell)/2) for the binary
/// law. Exact value via the closed form ell * 4^(ell-1) /
/// ((2 ell - 1) * C(2 ell - 2, ell - 1)).
std::pair<Rational, double> binary_mean_leafcount(std::size_t ell);

/// Direct summation route sum_t t * binary_subtree_law(ell, t); equals
/// binary_mean_leafcount(ell).first (cross-check path, O(ell) binomials).
Rational binary_mean_leafcount_direct(std::size_t ell);

}  // namespace gwlc
