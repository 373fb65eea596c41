#include <benchmark/benchmark.h>

#include "wavetrap/classify.hpp"
#include "wavetrap/transport.hpp"
#include "wavetrap/trapping.hpp"

using namespace wavetrap;

namespace {

const Profiles kConv{make_bump(0.0, 1.0, 0.5), make_betaplane(1.0)};

void BM_Integrate(benchmark::State& state) {
    const double horizon = static_cast<double>(state.range(0));
    for (auto _ : state) {
        const Trajectory t = integrate(PhasePoint(0, 1.0, 0.2, 0.5), horizon, kConv);
        benchmark::DoNotOptimize(t.steps);
    }
}
BENCHMARK(BM_Integrate)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_BracketAndPeriod(benchmark::State& state) {
    for (auto _ : state) {
        const PotentialReport r = bracket(1.1, 1.0, 0.0, kConv);
        benchmark::DoNotOptimize(period(r));
    }
}
BENCHMARK(BM_BracketAndPeriod)->Unit(benchmark::kMicrosecond);

void BM_Classify(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(classify(PhasePoint(0, 1.0, 0.3, 0.8), kConv).tau);
}
BENCHMARK(BM_Classify)->Unit(benchmark::kMicrosecond);

void BM_Scan(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const ScanGrid grid{{1.0, 1.0, 1}, {-1.0, 1.0, n}, {-1.5, 1.5, n}};
    for (auto _ : state)
        benchmark::DoNotOptimize(scan_lambda(grid, kConv).size());
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * grid.size()));
}
BENCHMARK(BM_Scan)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_PropagateRossby(benchmark::State& state) {
    const Profiles beta{make_zero_zonal(), make_betaplane(1.0)};
    const Ensemble e = sample_trapped_circle({-0.5, 0.5}, {1.0, 2.0}, 100, 1, 1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(propagate(e, 100.0, beta).t);
}
BENCHMARK(BM_PropagateRossby)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
