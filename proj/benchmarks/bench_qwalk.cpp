#include <benchmark/benchmark.h>

#include "qwalk/locality.hpp"
#include "qwalk/quantum.hpp"
#include "qwalk/spectral.hpp"

using namespace qwalk;

static void BM_StationaryTorus(benchmark::State& state) {
    const WalkMatrix p = walk_from_graph(build_torus(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(stationary(p));
}
BENCHMARK(BM_StationaryTorus)->Arg(16)->Arg(32)->Arg(64);

static void BM_HittingTimeEigen(benchmark::State& state) {
    const Index n = state.range(0);
    const WalkMatrix p = walk_from_graph(build_torus(n));
    const MarkedSet m(n * n, {0});
    for (auto _ : state) benchmark::DoNotOptimize(hitting_time_spectral(p, m, SpectralRoute::eigen));
}
BENCHMARK(BM_HittingTimeEigen)->Arg(8)->Arg(16)->Arg(24);

static void BM_HittingTimeResolvent(benchmark::State& state) {
    const Index n = state.range(0);
    const WalkMatrix p = walk_from_graph(build_torus(n));
    const MarkedSet m(n * n, {0});
    for (auto _ : state) benchmark::DoNotOptimize(hitting_time_spectral(p, m, SpectralRoute::resolvent));
}
BENCHMARK(BM_HittingTimeResolvent)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

static void BM_WalkStep(benchmark::State& state) {
    const Index n = state.range(0);
    const WalkMatrix p = walk_from_graph(build_torus(n));
    const auto walk = build_walk(make_absorbing(p, MarkedSet(n * n, {0})));
    WalkState s = initial_state(stationary(p).amplitudes());
    for (auto _ : state) {
        walk.step_in_place(s);
        benchmark::DoNotOptimize(s.alpha.data());
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_WalkStep)->Arg(16)->Arg(32)->Arg(64);

static void BM_FindSingleton(benchmark::State& state) {
    const Index n = state.range(0);
    const WalkMatrix p = walk_from_graph(build_torus(n));
    const MarkedSet m(n * n, {0});
    const auto steps = static_cast<Index>(2 * n * 2);
    for (auto _ : state) benchmark::DoNotOptimize(find_via_interpolation(p, m, 1.0 / (n * n), steps).success);
}
BENCHMARK(BM_FindSingleton)->Arg(8)->Arg(16)->Arg(32);

static void BM_LineLocalization(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(line_localization(state.range(0), 4096, 1).localized);
    state.SetItemsProcessed(state.iterations() * 4096);
}
BENCHMARK(BM_LineLocalization)->Arg(100)->Arg(400);

BENCHMARK_MAIN();
