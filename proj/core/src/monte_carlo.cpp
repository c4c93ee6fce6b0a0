#include "gwlc/monte_carlo.hpp"

#include <cmath>
#include <cstddef>
#include <thread>
#include <vector>

#include "gwlc/errors.hpp"
#include "gwlc/leaf_series.hpp"
#include "gwlc/philox.hpp"
#include "gwlc/sampler.hpp"
#include "gwlc/tree.hpp"

namespace gwlc {

ConditionalLaw McResult::as_law() const {
  ConditionalLaw law;
  law.ell = ell;
  law.kind = LawKind::monte_carlo;
  law.exact = false;
  law.masses_f64.resize(ell, 0.0);
  double sum = 0.0;
  for (const auto& e : estimates) {
    law.masses_f64[e.t - 1] = e.point;
    sum += e.point;
  }
  law.residual_f64 = 1.0 - sum;
  return law;
}

namespace {

struct WorkerAccum {
  std::vector<double> sum;    // indexed by t
  std::vector<double> sumsq;
  std::uint64_t accepted = 0;
  std::uint64_t trials = 0;
  std::uint64_t overflowed = 0;
};

void run_worker(const DegreeSampler& sampler, std::size_t ell, std::size_t node_cap,
                std::uint64_t seed, std::uint64_t stream, std::uint64_t target,
                std::uint64_t trial_budget, WorkerAccum& acc) {
  PhiloxStream rng(seed, stream);
  std::vector<std::uint32_t> degrees;
  degrees.reserve(node_cap < 4096 ? node_cap : 4096);

  acc.sum.assign(ell + 1, 0.0);
  acc.sumsq.assign(ell + 1, 0.0);

  while (acc.accepted < target && acc.trials < trial_budget) {
    ++acc.trials;
    degrees.clear();
    std::size_t pending = 1;
    std::size_t leaves = 0;
    bool viable = true;
    while (pending > 0) {
      if (degrees.size() == node_cap) {
        ++acc.overflowed;
        viable = false;
        break;
      }
      std::uint32_t d = sampler.draw(rng);
      degrees.push_back(d);
      pending += d;
      pending -= 1;
      if (d == 0) ++leaves;
      // Every pending slot grows at least one more leaf, so this trial can
      // no longer land on exactly ell leaves.
      if (leaves + pending > ell) {
        viable = false;
        break;
      }
    }
    if (!viable || leaves != ell) continue;

    SubtreeProfile profile = subtree_profile(GWTree{degrees});
    ++acc.accepted;
    double inv_v = 1.0 / static_cast<double>(profile.vertices);
    for (std::size_t t = 1; t <= profile.leaves; ++t) {
      if (profile.counts[t] == 0) continue;
      double w = static_cast<double>(profile.counts[t]) * inv_v;
      acc.sum[t] += w;
      acc.sumsq[t] += w * w;
    }
  }
}

}  // namespace

McResult mc_conditional_law(const OffspringDistribution& dist, std::size_t ell,
                            const McOptions& options) {
  if (ell < 1) raise(errc::invalid_argument, "ell must be >= 1");
  if (options.target_accepted < 1) raise(errc::invalid_argument, "target_accepted must be >= 1");
  if (options.workers < 1) raise(errc::invalid_argument, "workers must be >= 1");
  if (options.node_cap < 1) raise(errc::invalid_argument, "node_cap must be >= 1");

  std::size_t node_cap = options.node_cap;
  if (dist.prob(1) == 0 && 2 * ell - 1 < node_cap) node_cap = 2 * ell - 1;

  double leaf_prob;
  if (options.leaf_prob.has_value()) {
    leaf_prob = *options.leaf_prob;
  } else {
    LeafSeriesEngineF64 engine(dist);
    engine.grow(ell);
    leaf_prob = engine.coefficient(ell);
  }

  double budget_d;
  if (leaf_prob > 0.0) {
    budget_d = static_cast<double>(options.budget_factor) *
               static_cast<double>(options.target_accepted) / leaf_prob;
  } else {
    budget_d = static_cast<double>(options.budget_factor) *
               static_cast<double>(options.target_accepted) * 1e6;
  }
  const double budget_max = 9e18;
  std::uint64_t total_budget =
      budget_d > budget_max ? static_cast<std::uint64_t>(budget_max)
                            : static_cast<std::uint64_t>(budget_d) + 1;

  unsigned workers = options.workers;
  DegreeSampler sampler(dist);
  std::vector<WorkerAccum> accums(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    std::uint64_t target = options.target_accepted / workers +
                           (w < options.target_accepted % workers ? 1 : 0);
    std::uint64_t budget = total_budget / workers + (w < total_budget % workers ? 1 : 0);
    threads.emplace_back(run_worker, std::cref(sampler), ell, node_cap, options.seed,
                         std::uint64_t{w}, target, budget, std::ref(accums[w]));
  }
  for (auto& t : threads) t.join();

  // Merge in fixed worker order for bit-reproducibility.
  McResult result;
  result.ell = ell;
  result.seed = options.seed;
  std::vector<double> sum(ell + 1, 0.0);
  std::vector<double> sumsq(ell + 1, 0.0);
  for (const WorkerAccum& acc : accums) {
    result.accepted += acc.accepted;
    result.trials += acc.trials;
    result.overflowed += acc.overflowed;
    for (std::size_t t = 1; t <= ell; ++t) {
      sum[t] += acc.sum[t];
      sumsq[t] += acc.sumsq[t];
    }
  }
  if (result.accepted == 0) {
    raise(errc::zero_accepted, "trials budget exhausted with no accepted tree");
  }

  double n = static_cast<double>(result.accepted);
  result.estimates.reserve(ell);
  for (std::size_t t = 1; t <= ell; ++t) {
    ConditionalEstimate e;
    e.ell = ell;
    e.t = t;
    e.accepted = result.accepted;
    e.trials = result.trials;
    e.overflowed = result.overflowed;
    e.seed = options.seed;
    e.point = sum[t] / n;
    if (result.accepted > 1) {
      double var = (sumsq[t] - sum[t] * sum[t] / n) / (n - 1.0);
      if (var < 0.0) var = 0.0;
      e.std_err = std::sqrt(var / n);
    }
    result.estimates.push_back(e);
  }
  return result;
}

}  // namespace gwlc
