#include "abst/baselines.hpp"
#include "abst/dynamic.hpp"
#include "abst/prefix_tree.hpp"
#include "abst/sfe_code.hpp"
#include "abst/workload.hpp"

#include <benchmark/benchmark.h>

namespace {

abst::ProbabilityDistribution zipf_distribution(std::size_t n) {
    const auto trace = abst::generate(abst::WorkloadSpec::parse("zipf:1.0"), n, 20 * n, 1);
    std::vector<std::uint64_t> w(n, 1);
    for (auto k : trace) ++w[k - 1];
    return abst::ProbabilityDistribution::from_weights(w);
}

void BM_BuildSfeCode(benchmark::State& state) {
    const auto dist = zipf_distribution(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(abst::build_sfe_code(dist));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildSfeCode)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_SfeToBst(benchmark::State& state) {
    const auto dist = zipf_distribution(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(abst::sfe_to_bst(dist));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SfeToBst)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_Simulate(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto trace = abst::generate(abst::WorkloadSpec::parse("zipf:1.0"), n, 20000, 7);
    for (auto _ : state) {
        abst::SimulationState sim(n, 8, abst::Smoothing::laplace, {false, false});
        benchmark::DoNotOptimize(abst::run(sim, trace));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(trace.size()));
}
BENCHMARK(BM_Simulate)->Arg(16)->Arg(64)->Arg(256);

void BM_OptimalStatic(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    abst::Rng rng(3);
    std::vector<std::uint64_t> w(n);
    for (auto& x : w) x = 1 + rng.below(1000);
    const abst::WeightVector weights(w);
    for (auto _ : state) benchmark::DoNotOptimize(abst::optimal_static_cost(weights).cost);
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_OptimalStatic)->RangeMultiplier(2)->Range(16, 256)->Complexity();

}  // namespace

BENCHMARK_MAIN();
