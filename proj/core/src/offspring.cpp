#include "gwlc/offspring.hpp"

#include <cmath>
#include <numbers>

#include "gwlc/errors.hpp"

namespace gwlc {

namespace {

const Rational kZero(0);
const Rational kOne(1);

}  // namespace

const Rational& OffspringDistribution::prob(std::size_t j) const {
  return j < probs.size() ? probs[j] : kZero;
}

bool OffspringDistribution::unary_free() const {
  return probs.size() < 2 || probs[1] == 0;
}

std::string OffspringDistribution::key() const {
  std::string k;
  for (const auto& p : probs) {
    k += to_fraction_string(p);
    k += ',';
  }
  return k;
}

OffspringDistribution OffspringDistribution::binary() {
  return validate_offspring({Rational(1, 2), Rational(0), Rational(1, 2)}, true);
}

OffspringDistribution OffspringDistribution::p1demo() {
  return validate_offspring({Rational(3, 10), Rational(4, 10), Rational(3, 10)}, true);
}

OffspringDistribution validate_offspring(std::vector<Rational> probs,
                                         bool require_critical) {
  if (probs.empty()) raise(errc::invalid_argument, "offspring law needs at least p0");
  while (probs.size() > 1 && probs.back() == 0) probs.pop_back();

  Rational sum(0);
  for (std::size_t j = 0; j < probs.size(); ++j) {
    if (probs[j] < 0) {
      raise(errc::negative_probability,
            "p" + std::to_string(j) + " = " + to_fraction_string(probs[j]));
    }
    sum += probs[j];
  }
  if (sum != kOne) {
    raise(errc::sum_not_one, "probabilities sum to " + to_fraction_string(sum));
  }
  if (probs[0] == 0) raise(errc::zero_extinction, "p0 must be positive");
  if (probs.size() > 1 && probs[1] == kOne) {
    raise(errc::degenerate_unary, "p1 = 1 never terminates");
  }

  OffspringDistribution d;
  d.probs = std::move(probs);

  Rational second(0);
  for (std::size_t j = 1; j < d.probs.size(); ++j) {
    d.mean += Rational(j) * d.probs[j];
    second += Rational(j) * Rational(j) * d.probs[j];
  }
  d.variance = second - d.mean * d.mean;
  d.critical = (d.mean == kOne);
  if (require_critical && !d.critical) {
    raise(errc::not_critical, "mean = " + to_fraction_string(d.mean));
  }

  if (d.variance > 0) {
    const double p0 = to_double(d.probs[0]);
    const double var = to_double(d.variance);
    d.gamma_leaf = std::sqrt(p0 / (2.0 * std::numbers::pi * var));
    d.gamma_series = std::sqrt(2.0 * p0) / std::sqrt(var);
  }

  BigInt lcm = 1;
  for (const auto& p : d.probs) {
    BigInt den = denominator(p);
    BigInt g = gcd(lcm, den);
    lcm = lcm / g * den;
  }
  d.common_denominator = lcm;
  d.numerators.reserve(d.probs.size());
  for (const auto& p : d.probs) {
    d.numerators.push_back(numerator(p) * (lcm / denominator(p)));
  }
  return d;
}

OffspringDistribution reduce_distribution(const OffspringDistribution& d) {
  const Rational p1 = d.prob(1);
  if (p1 == kOne) raise(errc::degenerate_unary, "cannot reduce p1 = 1");
  const Rational keep = kOne - p1;
  std::vector<Rational> reduced(d.probs.size());
  for (std::size_t j = 0; j < d.probs.size(); ++j) {
    reduced[j] = (j == 1) ? Rational(0) : d.probs[j] / keep;
  }
  return validate_offspring(std::move(reduced), /*require_critical=*/false);
}

}  // namespace gwlc
