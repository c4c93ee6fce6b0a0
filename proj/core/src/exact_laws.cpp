#include "gwlc/exact_laws.hpp"

#include <cmath>
#include <cstddef>
#include <mutex>
#include <numbers>
#include <utility>
#include <vector>

#include "gwlc/errors.hpp"
#include "gwlc/power_series.hpp"

namespace gwlc {

const char* law_kind_name(LawKind kind) {
  switch (kind) {
    case LawKind::exact_binary: return "exact-binary";
    case LawKind::plugin: return "plugin";
    case LawKind::oracle_enumeration: return "oracle-enumeration";
    case LawKind::monte_carlo: return "monte-carlo";
  }
  return "unknown";
}

namespace {

void check_range(std::size_t ell, std::size_t t) {
  if (t < 1 || t > ell) raise(errc::out_of_range, "need 1 <= t <= ell");
}

}  // namespace

LawContext::LawContext(OffspringDistribution dist, LawPolicy policy)
    : dist_(std::move(dist)), policy_(policy), engine_(dist_), engine_f64_(dist_) {
  if (!dist_.critical) {
    raise(errc::not_critical, "exact laws require offspring mean exactly 1");
  }
}

Rational LawContext::leaf_unlocked(std::size_t ell) {
  if (ell < 1) raise(errc::out_of_range, "leaf count must be >= 1");
  engine_.grow(ell);
  return engine_.coefficient(ell);
}

Rational LawContext::leaf_law(std::size_t ell) {
  std::lock_guard<std::mutex> lock(mu_);
  return leaf_unlocked(ell);
}

double LawContext::leaf_law_f64(std::size_t ell) {
  std::lock_guard<std::mutex> lock(mu_);
  if (ell < 1) raise(errc::out_of_range, "leaf count must be >= 1");
  engine_f64_.grow(ell);
  return engine_f64_.coefficient(ell);
}

std::pair<double, double> LawContext::leaf_law_asymptotic(std::size_t ell) const {
  if (ell < 1) raise(errc::out_of_range, "leaf count must be >= 1");
  BigInt num = odd_double_factorial(2 * static_cast<std::int64_t>(ell) - 3);
  BigInt den = int_pow(BigInt(2), ell) * factorial(ell);
  double df_form = dist_.gamma_series * to_double(make_rational(num, den));
  double power_form = dist_.gamma_leaf / std::pow(static_cast<double>(ell), 1.5);
  return {df_form, power_form};
}

Rational LawContext::joint_closed_unlocked(std::size_t ell, std::size_t t) {
  Rational pt = leaf_unlocked(t);
  Rational ptail = leaf_unlocked(ell - t + 1);
  return pt * Rational(ell - t + 1) * ptail / dist_.prob(0);
}

Rational LawContext::joint_mass(std::size_t ell, std::size_t t, JointMode mode) {
  check_range(ell, t);
  std::lock_guard<std::mutex> lock(mu_);
  if (mode == JointMode::closed) return joint_closed_unlocked(ell, t);

  // Recursion mode: with h = 1 - p0/f', the masses for fixed t satisfy
  //   (1 - p1) jm[m] = sum_{mu=t}^{m-1} jm[mu] * h[m - mu],  m > t,
  // (the mu = m term, h[0] = p1, is moved to the left side) with base
  // jm[t] = P(L=t)/(1-p1).
  engine_.grow(ell);
  std::size_t span = ell - t;
  std::vector<Rational> fp_coeffs(span + 1);
  for (std::size_t s = 0; s <= span; ++s) {
    fp_coeffs[s] = Rational(s + 1) * engine_.coefficient(s + 1);
  }
  PowerSeries inv_fp = reciprocal(PowerSeries(std::move(fp_coeffs)));
  Rational p0 = dist_.prob(0);
  Rational one_minus_p1 = Rational(1) - dist_.prob(1);

  std::vector<Rational> h(span + 1);
  for (std::size_t s = 0; s <= span; ++s) {
    h[s] = (s == 0 ? Rational(1) : Rational(0)) - p0 * inv_fp[s];
  }

  std::vector<Rational> jm(span + 1);
  jm[0] = engine_.coefficient(t) / one_minus_p1;
  for (std::size_t m = 1; m <= span; ++m) {
    Rational acc(0);
    for (std::size_t u = 0; u < m; ++u) acc += jm[u] * h[m - u];
    jm[m] = acc / one_minus_p1;
  }
  return jm[span];
}

Rational LawContext::expected_subtree_count(std::size_t ell, std::size_t t) {
  check_range(ell, t);
  std::lock_guard<std::mutex> lock(mu_);
  return joint_closed_unlocked(ell, t) / leaf_unlocked(ell);
}

Rational LawContext::vertex_mass(std::size_t ell) {
  if (ell < 1) raise(errc::out_of_range, "leaf count must be >= 1");
  std::lock_guard<std::mutex> lock(mu_);
  return engine_.vertex_mass(ell);
}

VMoments LawContext::v_conditional_moments(std::size_t ell) {
  if (ell < 1) raise(errc::out_of_range, "leaf count must be >= 1");
  std::lock_guard<std::mutex> lock(mu_);
  Rational p = leaf_unlocked(ell);
  Rational ev = engine_.vertex_mass(ell);
  Rational evv1 = engine_.vertex_pair_mass(ell);

  VMoments out;
  out.ell = ell;
  out.mean = ev / p;
  out.second = (evv1 + ev) / p;
  out.variance = out.second - out.mean * out.mean;
  return out;
}

Rational LawContext::plugin_mass_unlocked(std::size_t ell, std::size_t t) {
  Rational one_minus_p1 = Rational(1) - dist_.prob(1);
  Rational num = Rational(ell - t + 1) * leaf_unlocked(ell - t + 1) * leaf_unlocked(t);
  Rational den = Rational(ell) * leaf_unlocked(ell);
  return one_minus_p1 * num / den;
}

double LawContext::plugin_mass_f64_unlocked(std::size_t ell, std::size_t t) {
  engine_f64_.grow(ell);
  double one_minus_p1 = 1.0 - to_double(dist_.prob(1));
  double num = static_cast<double>(ell - t + 1) * engine_f64_.coefficient(ell - t + 1);
  num *= engine_f64_.coefficient(t);
  double den = static_cast<double>(ell) * engine_f64_.coefficient(ell);
  return one_minus_p1 * (num / den);
}

Rational LawContext::plugin_mass(std::size_t ell, std::size_t t) {
  check_range(ell, t);
  std::lock_guard<std::mutex> lock(mu_);
  return plugin_mass_unlocked(ell, t);
}

double LawContext::plugin_mass_f64(std::size_t ell, std::size_t t) {
  check_range(ell, t);
  std::lock_guard<std::mutex> lock(mu_);
  return plugin_mass_f64_unlocked(ell, t);
}

ConditionalLaw LawContext::plugin_conditional_law(std::size_t ell) {
  if (ell < 1) raise(errc::out_of_range, "leaf count must be >= 1");
  std::lock_guard<std::mutex> lock(mu_);

  ConditionalLaw law;
  law.ell = ell;
  law.kind = LawKind::plugin;
  law.masses_f64.resize(ell);

  if (ell <= policy_.exact_max_order) {
    law.exact = true;
    law.masses.resize(ell);
    Rational sum(0);
    for (std::size_t t = 1; t <= ell; ++t) {
      law.masses[t - 1] = plugin_mass_unlocked(ell, t);
      law.masses_f64[t - 1] = to_double(law.masses[t - 1]);
      sum += law.masses[t - 1];
    }
    law.residual = Rational(1) - sum;
    law.residual_f64 = to_double(law.residual);
  } else {
    double sum = 0.0;
    for (std::size_t t = 1; t <= ell; ++t) {
      law.masses_f64[t - 1] = plugin_mass_f64_unlocked(ell, t);
      sum += law.masses_f64[t - 1];
    }
    law.residual_f64 = 1.0 - sum;
  }
  return law;
}

double LawContext::tail_deficit(std::size_t ell) {
  if (ell < 3) raise(errc::ell_too_small, "tail threshold needs ell >= 3");
  std::lock_guard<std::mutex> lock(mu_);

  double ln = std::log(static_cast<double>(ell));
  double tau = std::sqrt(static_cast<double>(ell)) / (ln * ln);
  std::size_t cutoff = tau < 1.0 ? 0 : static_cast<std::size_t>(tau);
  if (cutoff > ell) cutoff = ell;

  if (ell <= policy_.exact_max_order) {
    Rational sum(0);
    for (std::size_t t = 1; t <= cutoff; ++t) sum += plugin_mass_unlocked(ell, t);
    return to_double(Rational(1) - sum);
  }
  double sum = 0.0;
  for (std::size_t t = 1; t <= cutoff; ++t) sum += plugin_mass_f64_unlocked(ell, t);
  return 1.0 - sum;
}

Rational binary_subtree_law(std::size_t ell, std::size_t t) {
  check_range(ell, t);
  BigInt b = binomial(ell, t);
  BigInt num = BigInt(t) * b * b;
  BigInt den = BigInt(ell) * BigInt(2 * ell - 1) * binomial(2 * (ell - 1), 2 * (t - 1));
  return make_rational(num, den);
}

Rational binary_mean_leafcount_term(std::size_t ell, std::size_t t) {
  check_range(ell, t);
  BigInt num = BigInt(ell) * binomial(2 * (t - 1), t - 1) * binomial(2 * (ell - t), ell - t);
  BigInt den = BigInt(2 * ell - 1) * binomial(2 * (ell - 1), ell - 1);
  return make_rational(num, den);
}

std::pair<Rational, double> binary_mean_leafcount(std::size_t ell) {
  if (ell < 1) raise(errc::out_of_range, "leaf count must be >= 1");
  BigInt num = BigInt(ell) * int_pow(BigInt(4), ell - 1);
  BigInt den = BigInt(2 * ell - 1) * binomial(2 * ell - 2, ell - 1);
  double asym = std::sqrt(std::numbers::pi * static_cast<double>(ell)) / 2.0;
  return {make_rational(num, den), asym};
}

Rational binary_mean_leafcount_direct(std::size_t ell) {
  if (ell < 1) raise(errc::out_of_range, "leaf count must be >= 1");
  Rational sum(0);
  for (std::size_t t = 1; t <= ell; ++t) sum += Rational(t) * binary_subtree_law(ell, t);
  return sum;
}

}  // namespace gwlc
