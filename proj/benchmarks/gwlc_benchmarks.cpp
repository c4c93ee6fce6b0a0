// Microbenchmarks for the hot paths: series growth, sampling, profiling,
// enumeration, and the Monte Carlo loop.

#include <benchmark/benchmark.h>

#include <cstddef>

#include "gwlc/enumerate.hpp"
#include "gwlc/exact_laws.hpp"
#include "gwlc/leaf_series.hpp"
#include "gwlc/monte_carlo.hpp"
#include "gwlc/offspring.hpp"
#include "gwlc/philox.hpp"
#include "gwlc/sampler.hpp"
#include "gwlc/tree.hpp"

namespace {

using namespace gwlc;

const OffspringDistribution& binary_dist() {
  static const OffspringDistribution d = OffspringDistribution::binary();
  return d;
}

const OffspringDistribution& chain_dist() {
  static const OffspringDistribution d = OffspringDistribution::p1demo();
  return d;
}

void BM_ExactSeriesGrow(benchmark::State& state) {
  const std::size_t order = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    LeafSeriesEngine engine(chain_dist());
    engine.grow(order);
    benchmark::DoNotOptimize(engine.scaled_numerator(order));
  }
  state.SetComplexityN(static_cast<benchmark::IterationCount>(order));
}
BENCHMARK(BM_ExactSeriesGrow)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_F64SeriesGrow(benchmark::State& state) {
  const std::size_t order = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    LeafSeriesEngineF64 engine(chain_dist());
    engine.grow(order);
    benchmark::DoNotOptimize(engine.coefficient(order));
  }
  state.SetComplexityN(static_cast<benchmark::IterationCount>(order));
}
BENCHMARK(BM_F64SeriesGrow)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void BM_DegreeSampler(benchmark::State& state) {
  DegreeSampler sampler(chain_dist());
  PhiloxStream rng(1, 0);
  std::uint64_t sink = 0;
  for (auto _ : state) sink += sampler.draw(rng);
  benchmark::DoNotOptimize(sink);
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_DegreeSampler);

void BM_SampleTree(benchmark::State& state) {
  DegreeSampler sampler(binary_dist());
  PhiloxStream rng(1, 0);
  std::size_t vertices = 0;
  for (auto _ : state) {
    auto tree = sample_tree(sampler, rng, 100000);
    if (tree) vertices += tree->vertex_count();
  }
  benchmark::DoNotOptimize(vertices);
}
BENCHMARK(BM_SampleTree);

void BM_SubtreeProfile(benchmark::State& state) {
  // One fixed large tree so iterations measure the profiling pass alone.
  DegreeSampler sampler(binary_dist());
  PhiloxStream rng(7, 0);
  GWTree tree;
  while (tree.vertex_count() < 1000) {
    auto sampled = sample_tree(sampler, rng, 100000);
    if (sampled && sampled->vertex_count() >= 1000) tree = *sampled;
  }
  for (auto _ : state) {
    SubtreeProfile profile = subtree_profile(tree);
    benchmark::DoNotOptimize(profile.vertices);
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<benchmark::IterationCount>(tree.vertex_count()));
}
BENCHMARK(BM_SubtreeProfile);

void BM_EnumerateBinary(benchmark::State& state) {
  const std::size_t ell = static_cast<std::size_t>(state.range(0));
  std::size_t trees = 0;
  for (auto _ : state) {
    enumerate_trees(binary_dist(), ell, 2 * ell - 1,
                    [&](const GWTree&, const Rational&) { ++trees; });
  }
  benchmark::DoNotOptimize(trees);
}
BENCHMARK(BM_EnumerateBinary)->DenseRange(6, 10, 2);

void BM_OracleLawChain(benchmark::State& state) {
  for (auto _ : state) {
    ConditionalLaw law = oracle_conditional_law(chain_dist(), 4, 16);
    benchmark::DoNotOptimize(law.residual_f64);
  }
}
BENCHMARK(BM_OracleLawChain);

void BM_MonteCarloLaw(benchmark::State& state) {
  McOptions opt;
  opt.seed = 1;
  opt.target_accepted = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    McResult result = mc_conditional_law(binary_dist(), 10, opt);
    benchmark::DoNotOptimize(result.estimates.front().point);
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<benchmark::IterationCount>(opt.target_accepted));
}
BENCHMARK(BM_MonteCarloLaw)->Arg(500)->Arg(2000);

void BM_PluginLaw(benchmark::State& state) {
  const std::size_t ell = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    LawContext ctx(chain_dist());
    ConditionalLaw law = ctx.plugin_conditional_law(ell);
    benchmark::DoNotOptimize(law.residual_f64);
  }
}
BENCHMARK(BM_PluginLaw)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
