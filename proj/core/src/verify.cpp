#include "gwlc/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "gwlc/enumerate.hpp"
#include "gwlc/exact_laws.hpp"
#include "gwlc/io.hpp"
#include "gwlc/leaf_series.hpp"
#include "gwlc/monte_carlo.hpp"
#include "gwlc/philox.hpp"
#include "gwlc/power_series.hpp"
#include "gwlc/rational.hpp"
#include "gwlc/sampler.hpp"
#include "gwlc/tree.hpp"

namespace gwlc {
namespace {

// Per-level sizes. quick keeps every check under a second or two; full
// pushes each one to its documented scale (seconds, worst case ~a minute
// in total).
struct Scales {
  std::size_t series_order;
  std::size_t fixed_point_order;
  std::size_t identity_order;
  std::size_t equi_order;
  std::size_t f64_law_max;
  std::size_t joint_mode_max;
  std::size_t joint_sum_max;
  std::vector<std::size_t> vmoment_grid;
  std::size_t plugin_paths_ell;
  std::size_t binary_norm_max;
  std::size_t binary_counts_max;
  std::size_t binary_term_max;
  std::size_t binary_mean_max;
  std::size_t oracle_binary_max;
  std::size_t sandwich_max;
  std::size_t catalan_max;
  std::size_t wellformed_ell;
  std::size_t fuzz_trees;
  std::size_t fuzz_cap;
  std::uint64_t freq_trials;
  std::uint64_t vmean_accepted;
  std::size_t mc_ell;
  std::size_t mc_target;
  bool run_slow;
};

Scales scales_for(VerifyLevel level) {
  if (level == VerifyLevel::full) {
    return Scales{60,     40,
                  33,     50,
                  200,    20,
                  30,     {100, 200, 400, 800, 1600},
                  64,     200,
                  50,     50,
                  120,    8,
                  7,      10,
                  5,      100000,
                  100000, 200000,
                  6000,   5,
                  3000,   true};
  }
  return Scales{24,    24,
                16,    20,
                60,    8,
                10,    {50, 100},
                10,    40,
                12,    12,
                30,    6,
                5,     7,
                4,     2000,
                10000, 20000,
                1500,  3,
                800,   false};
}

std::string rat_str(const Rational& r) {
  return numerator_string(r) + "/" + denominator_string(r);
}

class Runner {
 public:
  explicit Runner(VerifyReport& report) : report_(report) {}

  void add(const std::string& name, bool passed, const std::string& detail) {
    report_.checks.push_back(VerifyCheck{name, passed, detail});
  }

 private:
  VerifyReport& report_;
};

bool is_binary_law(const OffspringDistribution& d) {
  return d.probs == OffspringDistribution::binary().probs;
}

// --- generating-function checks -------------------------------------------

void check_reduction(Runner& run, const OffspringDistribution& d) {
  const OffspringDistribution r = reduce_distribution(d);
  const OffspringDistribution rr = reduce_distribution(r);
  {
    const bool ok = rr.probs == r.probs && r.prob(1) == 0;
    run.add("reduce_idempotent", ok,
            ok ? "reduce(reduce(d)) = reduce(d), unary mass removed"
               : "second reduction changed the law");
  }
  {
    const bool ok = r.critical == d.critical && (!d.critical || r.mean == 1);
    run.add("reduce_preserves_criticality", ok,
            "reduced mean = " + rat_str(r.mean));
  }
  {
    const double expect = 2.0 * std::sqrt(std::numbers::pi) * d.gamma_leaf;
    const double gap = std::abs(d.gamma_series - expect);
    const bool ok = gap <= 1e-12 * d.gamma_series;
    std::ostringstream os;
    os << "gamma_series = " << d.gamma_series << ", 2 sqrt(pi) gamma_leaf = " << expect;
    run.add("gamma_constants_consistent", ok, os.str());
  }
}

void check_series(Runner& run, const OffspringDistribution& d, const Scales& sc) {
  const PowerSeries f = solve_leaf_series(d, sc.series_order);
  {
    bool nonneg = f[0] == 0;
    bool all_positive = true;
    for (std::size_t i = 1; i <= f.order(); ++i) {
      if (f[i] < 0) nonneg = false;
      if (f[i] == 0) all_positive = false;
    }
    Rational sum(0);
    bool monotone = true;
    Rational prev(0);
    for (std::size_t i = 1; i <= f.order(); ++i) {
      sum += f[i];
      if (all_positive ? !(sum > prev) : sum < prev) monotone = false;
      prev = sum;
    }
    const bool bounded = sum < 1;
    const bool ok = nonneg && monotone && bounded;
    std::ostringstream os;
    os << "order " << f.order() << ", partial sum " << to_double(sum)
       << (all_positive ? ", strictly increasing" : ", non-decreasing");
    run.add("leaf_series_monotone", ok, os.str());
  }
  {
    // Substituting the solved series into sum_j p_j f^j + p0 x must give it back.
    const PowerSeries g = f.truncated(sc.fixed_point_order);
    PowerSeries rhs = PowerSeries::zero(g.order());
    rhs[1] = d.prob(0);
    PowerSeries pw = PowerSeries::constant(Rational(1), g.order());
    for (std::size_t j = 1; j <= d.max_degree(); ++j) {
      pw = mul(pw, g);
      if (d.prob(j) != 0) rhs = add(rhs, scale(pw, d.prob(j)));
    }
    const auto bad = first_mismatch(g, rhs, g.order());
    run.add("fixed_point_substitution", !bad.has_value(),
            bad ? "mismatch at order " + std::to_string(*bad)
                : "series reproduced through order " + std::to_string(g.order()));
  }
  {
    const IdentityReport rep = verify_gf_identities(d, sc.identity_order);
    std::ostringstream os;
    os << "derivative identities checked to orders " << rep.first_checked_order << "/"
       << rep.second_checked_order;
    if (!rep.agrees()) {
      os << "; mismatch at "
         << (rep.first_mismatch_index ? std::to_string(*rep.first_mismatch_index)
                                      : std::string("-"))
         << "," << (rep.second_mismatch_index ? std::to_string(*rep.second_mismatch_index)
                                              : std::string("-"));
    }
    run.add("gf_identities", rep.agrees(), os.str());
  }
  {
    const PowerSeries a = solve_leaf_series(d, sc.equi_order);
    const PowerSeries b = solve_leaf_series(reduce_distribution(d), sc.equi_order);
    run.add("unary_reduction_equidistribution", a == b,
            "leaf series of d and reduce(d) through order " + std::to_string(sc.equi_order));
  }
  {
    const PowerSeries fp = derivative(f);
    const PowerSeries prod = mul(fp, reciprocal(fp));
    const bool ok = prod == PowerSeries::constant(Rational(1), prod.order());
    run.add("reciprocal_roundtrip", ok,
            "f' * 1/f' = 1 through order " + std::to_string(prod.order()));
  }
}

// --- exact-law checks ------------------------------------------------------

void check_laws(Runner& run, LawContext& ctx, const Scales& sc) {
  const OffspringDistribution& d = ctx.dist();
  {
    double worst = 0.0;
    for (std::size_t ell = 1; ell <= sc.f64_law_max; ++ell) {
      const double exact = to_double(ctx.leaf_law(ell));
      const double approx = ctx.leaf_law_f64(ell);
      const double rel = exact == 0.0 ? std::abs(approx)
                                      : std::abs(approx - exact) / exact;
      worst = std::max(worst, rel);
    }
    std::ostringstream os;
    os << "max relative gap " << worst << " through ell = " << sc.f64_law_max;
    run.add("leaf_law_dual_paths", worst <= 1e-10, os.str());
  }
  {
    bool ok = true;
    std::string where = "all pairs agree";
    for (std::size_t ell = 1; ell <= sc.joint_mode_max && ok; ++ell) {
      for (std::size_t t = 1; t <= ell; ++t) {
        if (ctx.joint_mass(ell, t, JointMode::closed) !=
            ctx.joint_mass(ell, t, JointMode::recursion)) {
          ok = false;
          where = "closed != recursion at ell=" + std::to_string(ell) +
                  " t=" + std::to_string(t);
          break;
        }
      }
    }
    run.add("joint_modes_agree", ok,
            where + " (ell <= " + std::to_string(sc.joint_mode_max) + ")");
  }
  {
    bool ok = true;
    std::string where = "rows match the vertex mass";
    for (std::size_t ell = 1; ell <= sc.joint_sum_max; ++ell) {
      Rational sum(0);
      for (std::size_t t = 1; t <= ell; ++t) sum += ctx.joint_mass(ell, t, JointMode::closed);
      if (sum != ctx.vertex_mass(ell)) {
        ok = false;
        where = "row sum != E[V 1(L=ell)] at ell=" + std::to_string(ell);
        break;
      }
    }
    run.add("joint_rows_sum_to_vertex_mass", ok,
            where + " (ell <= " + std::to_string(sc.joint_sum_max) + ")");
  }
  {
    std::vector<double> gaps, vars;
    for (std::size_t ell : sc.vmoment_grid) {
      const VMoments m = ctx.v_conditional_moments(ell);
      const double mean = to_double(m.mean);
      const double var = to_double(m.variance);
      gaps.push_back(std::abs(mean - double(ell) / to_double(d.prob(0))) / std::sqrt(double(ell)));
      vars.push_back(var / std::pow(double(ell), 1.5));
    }
    const double gap_max = *std::max_element(gaps.begin(), gaps.end());
    const double var_max = *std::max_element(vars.begin(), vars.end());
    const bool ok = gap_max <= 2.0 * gaps.front() + 1e-9 && var_max <= 2.0 * vars.front() + 1e-9;
    std::ostringstream os;
    os << "scaled mean gap " << gaps.front() << " -> " << gaps.back() << ", scaled variance "
       << vars.front() << " -> " << vars.back();
    run.add("vmoment_diagnostics_bounded", ok, os.str());
  }
  {
    const std::size_t ell = sc.plugin_paths_ell;
    const ConditionalLaw law = ctx.plugin_conditional_law(ell);
    bool ok = law.exact;
    Rational sum(0);
    double worst = 0.0;
    for (std::size_t t = 1; t <= ell && ok; ++t) {
      sum += law.mass(t);
      const double exact = to_double(law.mass(t));
      const double rel = exact == 0.0 ? std::abs(law.mass_f64(t))
                                      : std::abs(law.mass_f64(t) - exact) / exact;
      worst = std::max(worst, rel);
      if (rel > 1e-9) ok = false;
    }
    if (ok && sum + law.residual != 1) ok = false;
    std::ostringstream os;
    os << "ell = " << ell << ", max path gap " << worst << ", residual "
       << to_double(law.residual);
    run.add("plugin_paths_consistent", ok, os.str());
  }
  if (sc.run_slow) {
    const std::vector<std::size_t> grid{100, 1000, 10000};
    const double p1 = to_double(d.prob(1));
    bool ok = true;
    std::ostringstream os;
    for (std::size_t t = 1; t <= 5; ++t) {
      const double limit = (1.0 - p1) * ctx.leaf_law_f64(t);
      std::array<double, 3> diff{};
      for (std::size_t k = 0; k < grid.size(); ++k) {
        diff[k] = std::abs(ctx.plugin_mass_f64(grid[k], t) - limit);
      }
      const bool zero = diff[0] == 0.0 && diff[1] == 0.0 && diff[2] == 0.0;
      const bool shrinking = diff[1] < diff[0] && diff[2] < diff[1];
      if (!(zero || (shrinking && diff[2] < 0.01))) ok = false;
      os << "t=" << t << ": " << diff[0] << " > " << diff[1] << " > " << diff[2] << "; ";
    }
    run.add("plugin_limit_convergence", ok, os.str());
  }
  if (sc.run_slow) {
    const std::vector<std::size_t> grid{100, 1000, 10000};
    const double limit = to_double(d.prob(1));
    std::array<double, 3> def{};
    for (std::size_t k = 0; k < grid.size(); ++k) def[k] = ctx.tail_deficit(grid[k]);
    const bool ok = def[1] <= def[0] && def[2] <= def[1] && def[0] >= limit - 1e-9 &&
                    def[1] >= limit - 1e-9 && def[2] >= limit - 1e-9 &&
                    std::abs(def[2] - limit) < std::abs(def[0] - limit);
    std::ostringstream os;
    os << "deficits " << def[0] << ", " << def[1] << ", " << def[2] << " vs limit " << limit;
    run.add("tail_deficit_trend", ok, os.str());
  }
  if (sc.run_slow) {
    bool ok = true;
    std::ostringstream os;
    for (std::size_t ell : {std::size_t{10}, std::size_t{100}, std::size_t{1000}}) {
      const double exact = ctx.leaf_law_f64(ell);
      const auto [df, power] = ctx.leaf_law_asymptotic(ell);
      if (std::abs(df - exact) > std::abs(power - exact)) ok = false;
      if (ell == 1000 && (df < 0.85 * exact || df > 1.15 * exact)) ok = false;
      os << "ell=" << ell << ": exact " << exact << ", refined " << df << ", power " << power
         << "; ";
    }
    run.add("leaf_asymptotic_forms", ok, os.str());
  }
}

void check_binary_laws(Runner& run, LawContext& ctx, const Scales& sc) {
  {
    bool ok = true;
    for (std::size_t ell = 1; ell <= sc.binary_norm_max && ok; ++ell) {
      Rational sum(0);
      for (std::size_t t = 1; t <= ell; ++t) sum += binary_subtree_law(ell, t);
      if (sum != 1) ok = false;
    }
    run.add("binary_law_normalized", ok,
            "closed-form masses sum to 1 for ell <= " + std::to_string(sc.binary_norm_max));
  }
  {
    bool ok = true;
    for (std::size_t ell = 1; ell <= sc.binary_counts_max && ok; ++ell) {
      const Rational v(2 * ell - 1);
      for (std::size_t t = 1; t <= ell; ++t) {
        if (binary_subtree_law(ell, t) != ctx.expected_subtree_count(ell, t) / v) {
          ok = false;
          break;
        }
      }
    }
    run.add("binary_law_from_expected_counts", ok,
            "law = E[X(t) | L=ell]/(2 ell - 1) for ell <= " +
                std::to_string(sc.binary_counts_max));
  }
  {
    bool ok = true;
    for (std::size_t ell = 1; ell <= sc.binary_term_max && ok; ++ell) {
      Rational sum(0);
      for (std::size_t t = 1; t <= ell; ++t) {
        const Rational term = binary_mean_leafcount_term(ell, t);
        if (term != Rational(t) * binary_subtree_law(ell, t)) {
          ok = false;
          break;
        }
        sum += term;
      }
      if (ok && sum != binary_mean_leafcount_direct(ell)) ok = false;
    }
    run.add("binary_term_identity", ok,
            "mean-summand identity for ell <= " + std::to_string(sc.binary_term_max));
  }
  {
    bool ok = true;
    for (std::size_t ell = 1; ell <= sc.binary_mean_max && ok; ++ell) {
      if (binary_mean_leafcount(ell).first != binary_mean_leafcount_direct(ell)) ok = false;
    }
    run.add("binary_mean_closed_form", ok,
            "closed form = direct sum for ell <= " + std::to_string(sc.binary_mean_max));
  }
}

// --- enumeration checks ----------------------------------------------------

void check_enumeration(Runner& run, LawContext& ctx, const Scales& sc) {
  const OffspringDistribution& d = ctx.dist();
  const bool unary_free = d.unary_free();
  {
    // Every emitted tree is well-formed, has the requested leaf count,
    // respects the cap, and carries its recomputed weight.
    const std::size_t ell = sc.wellformed_ell;
    const std::size_t cap =
        unary_free ? default_enumeration_cap(d, ell) : std::min<std::size_t>(4 * ell, 2 * ell + 8);
    bool ok = true;
    std::size_t count = 0;
    enumerate_trees(d, ell, cap, [&](const GWTree& tree, const Rational& weight) {
      ++count;
      if (!is_valid_encoding(tree.degrees) || tree.leaf_count() != ell ||
          tree.vertex_count() > cap) {
        ok = false;
        return;
      }
      Rational w(1);
      for (std::uint32_t deg : tree.degrees) w *= d.prob(deg);
      if (w != weight) ok = false;
    });
    run.add("enumeration_wellformed", ok && count > 0,
            std::to_string(count) + " trees at ell = " + std::to_string(ell) +
                ", cap " + std::to_string(cap));
  }
  {
    // Truncated joint mass brackets the closed form: the missing trees
    // contribute at most their total vertex mass, which is the exact gap
    // between E[V 1(L=ell)] and the enumerated sum of weight * V. For
    // unary-free laws the cap is sufficient, the slack is zero, and the
    // bracket collapses to exact equality.
    bool ok = true;
    std::string where = "joint mass bracketed";
    for (std::size_t ell = 1; ell <= sc.sandwich_max && ok; ++ell) {
      const std::size_t cap =
          unary_free ? default_enumeration_cap(d, ell) : 2 * ell + 4;
      std::vector<Rational> joint(ell + 1, Rational(0));
      Rational total(0);
      Rational vertex_total(0);
      enumerate_trees(d, ell, cap, [&](const GWTree& tree, const Rational& weight) {
        total += weight;
        vertex_total += weight * Rational(tree.vertex_count());
        const SubtreeProfile profile = subtree_profile(tree);
        for (std::size_t t = 1; t <= ell; ++t) {
          const std::size_t x = profile.count(t);
          if (x > 0) joint[t] += weight * Rational(x);
        }
      });
      const Rational residual = ctx.leaf_law(ell) - total;
      if (residual < 0 || (unary_free && residual != 0)) {
        ok = false;
        where = "residual out of range at ell=" + std::to_string(ell);
        break;
      }
      const Rational slack = ctx.vertex_mass(ell) - vertex_total;
      if (slack < 0 || (unary_free && slack != 0)) {
        ok = false;
        where = "vertex mass below the enumerated total at ell=" + std::to_string(ell);
        break;
      }
      for (std::size_t t = 1; t <= ell; ++t) {
        const Rational closed = ctx.joint_mass(ell, t, JointMode::closed);
        if (closed < joint[t] || closed > joint[t] + slack) {
          ok = false;
          where = "closed form outside bracket at ell=" + std::to_string(ell) +
                  " t=" + std::to_string(t);
          break;
        }
      }
    }
    run.add("oracle_joint_sandwich", ok,
            where + " (ell <= " + std::to_string(sc.sandwich_max) + ")");
  }
  {
    const std::size_t ell = 4;
    const ConditionalLaw law = oracle_conditional_law(d, ell, default_enumeration_cap(d, ell));
    Rational sum(0);
    for (std::size_t t = 1; t <= ell; ++t) sum += law.mass(t);
    const bool residual_ok = unary_free ? law.residual == 0 : law.residual > 0;
    const bool ok = law.exact && sum == 1 && residual_ok;
    run.add("oracle_law_normalized", ok,
            "masses sum to " + rat_str(sum) + ", residual " +
                format_double(to_double(law.residual)));
  }
}

void check_binary_enumeration(Runner& run, const OffspringDistribution& d, const Scales& sc) {
  {
    bool ok = true;
    std::string where = "tree counts match the Catalan numbers";
    for (std::size_t ell = 1; ell <= sc.catalan_max && ok; ++ell) {
      std::size_t count = 0;
      enumerate_trees(d, ell, 2 * ell - 1, [&](const GWTree&, const Rational&) { ++count; });
      const BigInt expect = binomial(2 * (ell - 1), ell - 1) / BigInt(ell);
      if (BigInt(count) != expect) {
        ok = false;
        where = "count mismatch at ell=" + std::to_string(ell);
      }
    }
    run.add("enumeration_catalan_counts", ok,
            where + " (ell <= " + std::to_string(sc.catalan_max) + ")");
  }
  {
    bool ok = true;
    std::string where = "oracle equals the closed-form law";
    for (std::size_t ell = 1; ell <= sc.oracle_binary_max && ok; ++ell) {
      const ConditionalLaw law = oracle_conditional_law(d, ell, 2 * ell - 1);
      if (law.residual != 0) {
        ok = false;
        where = "nonzero residual at ell=" + std::to_string(ell);
        break;
      }
      for (std::size_t t = 1; t <= ell; ++t) {
        if (law.mass(t) != binary_subtree_law(ell, t)) {
          ok = false;
          where = "mass mismatch at ell=" + std::to_string(ell) + " t=" + std::to_string(t);
          break;
        }
      }
    }
    run.add("oracle_matches_binary_law", ok,
            where + " (ell <= " + std::to_string(sc.oracle_binary_max) + ")");
  }
}

// --- sampling checks -------------------------------------------------------

void check_philox(Runner& run) {
  struct Vector {
    std::array<std::uint32_t, 4> counter;
    std::array<std::uint32_t, 2> key;
    std::array<std::uint32_t, 4> expect;
  };
  const std::array<Vector, 3> vectors{{
      {{0, 0, 0, 0}, {0, 0}, {0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}},
      {{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
       {0xffffffffu, 0xffffffffu},
       {0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}},
      {{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
       {0xa4093822u, 0x299f31d0u},
       {0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}},
  }};
  bool ok = true;
  for (const Vector& v : vectors) {
    if (Philox4x32::block(v.counter, v.key) != v.expect) ok = false;
  }
  run.add("philox_reference_vectors", ok,
          ok ? "all three published blocks reproduced" : "block function deviates");
}

void check_sampler(Runner& run, const OffspringDistribution& d, const Scales& sc,
                   std::uint64_t seed) {
  DegreeSampler sampler(d);
  PhiloxStream rng(seed, 101);
  std::vector<std::uint64_t> hits(d.max_degree() + 1, 0);
  const std::uint64_t n = sc.freq_trials;
  for (std::uint64_t i = 0; i < n; ++i) hits[sampler.draw(rng)]++;
  bool ok = true;
  double worst = 0.0;
  for (std::size_t j = 0; j <= d.max_degree(); ++j) {
    const double p = to_double(d.prob(j));
    const double freq = double(hits[j]) / double(n);
    const double tol = 4.0 * std::sqrt(p * (1.0 - p) / double(n)) + 1.0 / double(n);
    worst = std::max(worst, std::abs(freq - p));
    if (std::abs(freq - p) > tol) ok = false;
  }
  std::ostringstream os;
  os << n << " draws, worst frequency gap " << worst;
  run.add("sampler_frequencies", ok, os.str());
}

void check_profiles(Runner& run, const OffspringDistribution& d, const Scales& sc,
                    std::uint64_t seed) {
  DegreeSampler sampler(d);
  PhiloxStream rng(seed, 102);
  const bool unary_free = d.unary_free();
  const bool binary = is_binary_law(d);
  std::size_t overflows = 0;

  const auto flaw = [&](const GWTree& tree) -> std::string {
    if (!is_valid_encoding(tree.degrees)) return "sampler produced an invalid encoding";
    const SubtreeProfile profile = subtree_profile(tree);
    const std::size_t v = tree.vertex_count();
    const std::size_t l = tree.leaf_count();
    std::size_t total = 0;
    for (std::size_t count : profile.counts) total += count;
    const bool has_unary =
        std::find(tree.degrees.begin(), tree.degrees.end(), 1u) != tree.degrees.end();
    if (profile.leaves != l || profile.vertices != v) return "profile totals disagree";
    if (total != v) return "subtree counts do not sum to the vertex count";
    if (profile.count(l) < 1) return "root subtree missing from counts";
    if (profile.count(1) < l) return "fewer single-leaf subtrees than leaves";
    if (!has_unary && profile.count(1) != l) return "single-leaf excess without unary chains";
    if (unary_free && v > 2 * l - 1) return "vertex bound violated for unary-free law";
    if (binary && v != 2 * l - 1) return "binary tree size off";
    if (unary_free) {
      for (std::size_t t = 1; t <= l; ++t) {
        if (profile.count(t) > l / t) return "count(t) exceeds l/t for unary-free law";
      }
    }
    return {};
  };

  bool ok = true;
  std::string why = "all sampled profiles consistent";
  for (std::size_t i = 0; i < sc.fuzz_trees && ok; ++i) {
    const auto tree = sample_tree(sampler, rng, sc.fuzz_cap);
    if (!tree) {
      ++overflows;
      continue;
    }
    if (std::string found = flaw(*tree); !found.empty()) {
      ok = false;
      why = found;
    }
  }
  std::ostringstream os;
  os << why << " (" << sc.fuzz_trees << " trees, " << overflows << " over cap)";
  run.add("profile_invariants", ok, os.str());
}

void check_leaf_frequencies(Runner& run, LawContext& ctx, const Scales& sc,
                            std::uint64_t seed) {
  const std::array<std::size_t, 5> ells{1, 2, 3, 5, 10};
  DegreeSampler sampler(ctx.dist());
  PhiloxStream rng(seed, 103);
  std::array<std::uint64_t, 5> hits{};
  std::uint64_t overflowed = 0;
  for (std::uint64_t i = 0; i < sc.freq_trials; ++i) {
    const auto tree = sample_tree(sampler, rng, sc.fuzz_cap);
    if (!tree) {
      ++overflowed;
      continue;
    }
    const std::size_t l = tree->leaf_count();
    for (std::size_t k = 0; k < ells.size(); ++k) {
      if (l == ells[k]) {
        ++hits[k];
        break;
      }
    }
  }
  const double n = double(sc.freq_trials - overflowed);
  bool ok = n > 0;
  double worst = 0.0;
  for (std::size_t k = 0; k < ells.size() && ok; ++k) {
    const double p = ctx.leaf_law_f64(ells[k]);
    const double freq = double(hits[k]) / n;
    const double tol = 4.0 * std::sqrt(p * (1.0 - p) / n) + 1e-12;
    worst = std::max(worst, std::abs(freq - p) / p);
    if (std::abs(freq - p) > tol) ok = false;
  }
  std::ostringstream os;
  os << "worst relative gap " << worst << " over ell in {1,2,3,5,10}, " << overflowed
     << " over cap";
  run.add("leaf_frequency_match", ok, os.str());
}

void check_v_mean(Runner& run, LawContext& ctx, const Scales& sc, std::uint64_t seed) {
  const std::size_t ell = sc.mc_ell;
  DegreeSampler sampler(ctx.dist());
  PhiloxStream rng(seed, 104);
  std::uint64_t accepted = 0;
  double sum_v = 0.0;
  const std::uint64_t budget = sc.freq_trials * 64;
  for (std::uint64_t i = 0; i < budget && accepted < sc.vmean_accepted; ++i) {
    const auto tree = sample_tree(sampler, rng, sc.fuzz_cap);
    if (!tree || tree->leaf_count() != ell) continue;
    ++accepted;
    sum_v += double(tree->vertex_count());
  }
  const VMoments m = ctx.v_conditional_moments(ell);
  bool ok = accepted >= sc.vmean_accepted / 2;
  std::ostringstream os;
  if (ok) {
    const double mean = sum_v / double(accepted);
    const double expect = to_double(m.mean);
    const double se = std::sqrt(to_double(m.variance) / double(accepted));
    ok = std::abs(mean - expect) <= 4.0 * se + 1e-9;
    os << "empirical E[V | L=" << ell << "] = " << mean << " vs exact " << expect << " (se "
       << se << ", n " << accepted << ")";
  } else {
    os << "only " << accepted << " acceptances";
  }
  run.add("v_mean_match", ok, os.str());
}

void check_monte_carlo(Runner& run, LawContext& ctx, const Scales& sc, std::uint64_t seed) {
  const OffspringDistribution& d = ctx.dist();
  McOptions opt;
  opt.target_accepted = sc.mc_target;
  opt.seed = seed;
  opt.workers = 3;
  const McResult a = mc_conditional_law(d, sc.mc_ell, opt);
  const McResult b = mc_conditional_law(d, sc.mc_ell, opt);
  {
    const bool ok = csv_estimates(a) == csv_estimates(b);
    run.add("mc_reproducible", ok,
            ok ? "two runs with the same seed and 3 workers are byte-identical"
               : "repeated run diverged");
  }
  {
    double sum = 0.0;
    bool se_ok = true;
    for (const ConditionalEstimate& e : a.estimates) {
      sum += e.point;
      if (e.std_err < 0.0 || !std::isfinite(e.std_err)) se_ok = false;
    }
    const bool ok = std::abs(sum - 1.0) <= 1e-12 && se_ok && a.accepted == sc.mc_target;
    std::ostringstream os;
    os << "masses sum to " << sum << " from " << a.accepted << " accepted / " << a.trials
       << " trials";
    run.add("mc_normalized", ok, os.str());
  }
  if (sc.run_slow) {
    const std::size_t ell = 4;
    McOptions small = opt;
    small.target_accepted = sc.mc_target;
    const McResult mc = mc_conditional_law(d, ell, small);
    const std::size_t cap =
        d.unary_free() ? default_enumeration_cap(d, ell) : 2 * ell + 8;
    const ConditionalLaw oracle = oracle_conditional_law(d, ell, cap);
    bool ok = true;
    double worst = 0.0;
    for (std::size_t t = 1; t <= ell; ++t) {
      const ConditionalEstimate& e = mc.estimates[t - 1];
      const double gap = std::abs(e.point - oracle.mass_f64(t));
      worst = std::max(worst, gap);
      if (gap > 4.0 * e.std_err + 1e-10) ok = false;
    }
    std::ostringstream os;
    os << "worst gap " << worst << " at ell = " << ell << " (cap " << cap << ")";
    run.add("mc_matches_oracle", ok, os.str());
  }
}

}  // namespace

VerifyReport run_verification(const OffspringDistribution& dist, VerifyLevel level,
                              std::uint64_t seed) {
  const Scales sc = scales_for(level);
  VerifyReport report;
  Runner run(report);
  LawContext ctx(dist);

  check_reduction(run, dist);
  check_series(run, dist, sc);
  check_laws(run, ctx, sc);
  check_philox(run);
  check_sampler(run, dist, sc, seed);
  check_profiles(run, dist, sc, seed);
  check_leaf_frequencies(run, ctx, sc, seed);
  check_v_mean(run, ctx, sc, seed);
  check_monte_carlo(run, ctx, sc, seed);
  check_enumeration(run, ctx, sc);
  if (is_binary_law(dist)) {
    check_binary_laws(run, ctx, sc);
    check_binary_enumeration(run, dist, sc);
  }
  return report;
}

}  // namespace gwlc
