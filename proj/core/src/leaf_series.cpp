#include "gwlc/leaf_series.hpp"

#include <cstddef>
#include <utility>
#include <vector>

#include "gwlc/errors.hpp"

namespace gwlc {

namespace {

// Number of power arrays: Fhat^2 .. Fhat^max(D,2). The square is kept even
// when the law has no degree-2 atom because the V-moment extraction needs
// the coefficients of f^2.
std::size_t power_array_count(const OffspringDistribution& d) {
  std::size_t top = d.max_degree() < 2 ? 2 : d.max_degree();
  return top - 1;
}

}  // namespace

LeafSeriesEngine::LeafSeriesEngine(OffspringDistribution dist) : dist_(std::move(dist)) {
  const BigInt& b = dist_.common_denominator;
  BigInt n1 = dist_.numerators.size() > 1 ? dist_.numerators[1] : BigInt(0);
  if (n1 == b) raise(errc::degenerate_unary, "offspring law is concentrated on degree 1");
  m_ = b - n1;

  weights_.resize(dist_.max_degree() >= 2 ? dist_.max_degree() - 1 : 0);
  BigInt mpow(1);  // M^(j-2)
  for (std::size_t j = 2; j <= dist_.max_degree(); ++j) {
    weights_[j - 2] = dist_.numerators[j] * mpow;
    mpow *= m_;
  }

  a_.assign(1, BigInt(0));
  powers_.assign(power_array_count(dist_), std::vector<BigInt>(1, BigInt(0)));
  g_.assign(1, BigInt(0));
}

void LeafSeriesEngine::grow(std::size_t order) {
  std::size_t have = a_.size() - 1;
  if (order <= have) return;

  a_.resize(order + 1, BigInt(0));
  for (auto& p : powers_) p.resize(order + 1, BigInt(0));

  const BigInt& n0 = dist_.numerators[0];
  for (std::size_t ell = have + 1; ell <= order; ++ell) {
    // Fhat^2 by symmetric halving of the Cauchy product.
    BigInt sq(0);
    for (std::size_t i = 1; 2 * i < ell; ++i) sq += a_[i] * a_[ell - i];
    sq *= 2;
    if (ell % 2 == 0) sq += a_[ell / 2] * a_[ell / 2];
    powers_[0][ell] = sq;

    // Fhat^(k+2) = Fhat * Fhat^(k+1); valuation of Fhat^j is j.
    for (std::size_t k = 1; k < powers_.size(); ++k) {
      BigInt acc(0);
      for (std::size_t i = 1; i + k + 1 <= ell; ++i) acc += a_[i] * powers_[k - 1][ell - i];
      powers_[k][ell] = acc;
    }

    BigInt num = ell == 1 ? n0 : BigInt(0);
    for (std::size_t k = 0; k < weights_.size(); ++k) {
      if (weights_[k] != 0) num += weights_[k] * powers_[k][ell];
    }
    a_[ell] = num;
  }
}

Rational LeafSeriesEngine::coefficient(std::size_t ell) const {
  if (ell == 0) return Rational(0);
  BigInt den;
  mpz_pow_ui(den.backend().data(), m_.backend().data(), 2 * static_cast<unsigned long>(ell) - 1);
  return make_rational(a_[ell], den);
}

void LeafSeriesEngine::ensure_vertex_conv(std::size_t order) {
  std::size_t have = g_.size() - 1;
  if (order <= have) return;
  g_.resize(order + 1, BigInt(0));
  for (std::size_t m = have + 1; m <= order; ++m) {
    BigInt acc(0);
    for (std::size_t s = 0; s < m; ++s) acc += BigInt(s + 1) * a_[s + 1] * a_[m - s];
    g_[m] = acc;
  }
}

Rational LeafSeriesEngine::vertex_mass(std::size_t ell) {
  if (ell == 0) return Rational(0);
  grow(ell);
  ensure_vertex_conv(ell);
  BigInt den;
  mpz_pow_ui(den.backend().data(), m_.backend().data(), 2 * static_cast<unsigned long>(ell));
  return make_rational(g_[ell] * dist_.common_denominator, den * dist_.numerators[0]);
}

Rational LeafSeriesEngine::vertex_pair_mass(std::size_t ell) {
  if (ell == 0) return Rational(0);
  grow(ell);
  ensure_vertex_conv(ell);

  // [x^ell] f'' f^2 = num1 / M^(2 ell + 1)
  BigInt num1(0);
  for (std::size_t s = 0; s + 2 <= ell; ++s) {
    num1 += BigInt((s + 2) * (s + 1)) * a_[s + 2] * powers_[0][ell - s];
  }
  // [x^ell] (f')^2 f = num2 / M^(2 ell + 1), via f' * (f f')
  BigInt num2(0);
  for (std::size_t s = 0; s + 1 <= ell; ++s) {
    num2 += BigInt(s + 1) * a_[s + 1] * g_[ell - s];
  }

  const BigInt& b = dist_.common_denominator;
  const BigInt& n0 = dist_.numerators[0];
  BigInt den;
  mpz_pow_ui(den.backend().data(), m_.backend().data(), 2 * static_cast<unsigned long>(ell));
  Rational second_order = make_rational((num1 + 2 * num2) * b * b, den * m_ * n0 * n0);
  Rational first_order = make_rational(2 * g_[ell] * b, den * n0);
  return second_order - first_order;
}

LeafSeriesEngineF64::LeafSeriesEngineF64(const OffspringDistribution& dist) {
  probs_.resize(dist.max_degree() + 1);
  for (std::size_t j = 0; j <= dist.max_degree(); ++j) probs_[j] = to_double(dist.prob(j));
  c_.assign(1, 0.0);
  powers_.assign(power_array_count(dist), std::vector<double>(1, 0.0));
}

void LeafSeriesEngineF64::grow(std::size_t order) {
  std::size_t have = c_.size() - 1;
  if (order <= have) return;

  c_.resize(order + 1, 0.0);
  for (auto& p : powers_) p.resize(order + 1, 0.0);

  const double inv = 1.0 / (1.0 - (probs_.size() > 1 ? probs_[1] : 0.0));
  for (std::size_t ell = have + 1; ell <= order; ++ell) {
    double sq = 0.0;
    for (std::size_t i = 1; 2 * i < ell; ++i) sq += c_[i] * c_[ell - i];
    sq *= 2.0;
    if (ell % 2 == 0) sq += c_[ell / 2] * c_[ell / 2];
    powers_[0][ell] = sq;

    for (std::size_t k = 1; k < powers_.size(); ++k) {
      double acc = 0.0;
      for (std::size_t i = 1; i + k + 1 <= ell; ++i) acc += c_[i] * powers_[k - 1][ell - i];
      powers_[k][ell] = acc;
    }

    double num = ell == 1 ? probs_[0] : 0.0;
    for (std::size_t j = 2; j < probs_.size(); ++j) {
      if (probs_[j] != 0.0) num += probs_[j] * powers_[j - 2][ell];
    }
    c_[ell] = num * inv;
  }
}

PowerSeries solve_leaf_series(const OffspringDistribution& d, std::size_t order) {
  if (!d.critical) raise(errc::not_critical, "leaf series requires offspring mean exactly 1");
  LeafSeriesEngine engine(d);
  engine.grow(order);

  std::vector<Rational> coeffs(order + 1, Rational(0));
  const BigInt& m = engine.scale_base();
  BigInt den(1);
  BigInt m2 = m * m;
  for (std::size_t ell = 1; ell <= order; ++ell) {
    den = ell == 1 ? m : den * m2;  // M^(2 ell - 1)
    coeffs[ell] = make_rational(engine.scaled_numerator(ell), den);
  }
  return PowerSeries(std::move(coeffs));
}

IdentityReport verify_gf_identities(const OffspringDistribution& d, std::size_t order) {
  if (order < 3) raise(errc::order_too_small, "identity check needs order >= 3");
  return verify_gf_identities(d, solve_leaf_series(d, order));
}

IdentityReport verify_gf_identities(const OffspringDistribution& d, const PowerSeries& f) {
  if (f.order() < 3) raise(errc::order_too_small, "identity check needs order >= 3");

  IdentityReport report;
  report.requested_order = f.order();
  report.first_checked_order = f.order() - 1;
  report.second_checked_order = f.order() - 2;

  PowerSeries fp = derivative(f);
  PowerSeries fpp = derivative(fp);
  PowerSeries inv_fp = reciprocal(fp);

  // Left sides: running powers of f against the two tilted laws.
  // Entering iteration j, pw = f^(j-1) and pw_prev = f^(j-2) (unused at j=1).
  PowerSeries lhs1 = PowerSeries::zero(report.first_checked_order);
  PowerSeries lhs2 = PowerSeries::zero(report.second_checked_order);
  PowerSeries pw = PowerSeries::constant(Rational(1), report.first_checked_order);
  PowerSeries pw_prev = pw;
  for (std::size_t j = 1; j <= d.max_degree(); ++j) {
    Rational pj = d.prob(j);
    if (pj != 0) {
      lhs1 = add(lhs1, scale(pw, Rational(j) * pj));
      if (j >= 2) lhs2 = add(lhs2, scale(pw_prev, Rational(j) * Rational(j - 1) * pj));
    }
    if (j < d.max_degree()) {
      pw_prev = pw;
      pw = mul(pw, f);
    }
  }

  Rational p0 = d.prob(0);
  PowerSeries rhs1 =
      sub(PowerSeries::constant(Rational(1), report.first_checked_order), scale(inv_fp, p0));
  PowerSeries inv_fp3 = mul(mul(inv_fp, inv_fp), inv_fp);
  PowerSeries rhs2 = scale(mul(fpp, inv_fp3), p0);

  report.first_mismatch_index = first_mismatch(lhs1, rhs1, report.first_checked_order);
  report.second_mismatch_index = first_mismatch(lhs2, rhs2, report.second_checked_order);
  return report;
}

}  // namespace gwlc
