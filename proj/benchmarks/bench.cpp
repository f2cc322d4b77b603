#include <benchmark/benchmark.h>

#include "escweb/components.hpp"
#include "escweb/geometry.hpp"
#include "escweb/maxmod.hpp"
#include "escweb/orbit.hpp"
#include "escweb/rasterize.hpp"
#include "escweb/tracer.hpp"

using namespace escweb;

static void BM_classify_member(benchmark::State& state) {
    const ExpAffineMap f = ExpAffineMap::fatou();
    const RateSequence r = RateSequence::arithmetic(6);
    for (auto _ : state)
        benchmark::DoNotOptimize(classify_point(f, r, complexd(-3, 0.5), 200));
}
BENCHMARK(BM_classify_member);

static void BM_classify_violated(benchmark::State& state) {
    const ExpAffineMap f = ExpAffineMap::fatou();
    const RateSequence r = RateSequence::arithmetic(6);
    for (auto _ : state)
        benchmark::DoNotOptimize(classify_point(f, r, complexd(0, kPi), 200));
}
BENCHMARK(BM_classify_violated);

static void BM_max_modulus(benchmark::State& state) {
    const ExpAffineMap f = ExpAffineMap::fatou();
    for (auto _ : state) benchmark::DoNotOptimize(max_modulus(f, 5.0));
}
BENCHMARK(BM_max_modulus);

static void BM_rasterize(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    GridSpec spec(-8, 8, -12 * kPi, 12 * kPi, n, n, ExpAffineMap::fatou(),
                  RateSequence::arithmetic(6), 200);
    for (auto _ : state) benchmark::DoNotOptimize(rasterize(spec));
    state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_rasterize)->Arg(64)->Arg(256);

static void BM_label_components(benchmark::State& state) {
    GridSpec spec(-8, 8, -12 * kPi, 12 * kPi, 256, 256, ExpAffineMap::fatou(),
                  RateSequence::arithmetic(6), 200);
    const RegionMask mask = rasterize(spec);
    for (auto _ : state) benchmark::DoNotOptimize(label_components(mask));
}
BENCHMARK(BM_label_components);

static void BM_trace_default(benchmark::State& state) {
    const ExpAffineMap f = ExpAffineMap::fatou();
    for (auto _ : state) benchmark::DoNotOptimize(trace(f, 1, 1, -6.5, 2));
}
BENCHMARK(BM_trace_default);

BENCHMARK_MAIN();
