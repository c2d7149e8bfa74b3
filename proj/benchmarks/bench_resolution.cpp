#include <benchmark/benchmark.h>

#include "dtl/bar_complex.hpp"
#include "dtl/classical_tl.hpp"
#include "dtl/mayer_vietoris.hpp"

using namespace dtl;

static void BM_BuildCover(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(build_cover(n));
}
BENCHMARK(BM_BuildCover)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

static void BM_MayerVietorisAcyclic(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto mv = build_mv_complex(build_cover(n), Ring::polynomial());
    const Ring Z = Ring::integers(0);
    for (auto _ : state) benchmark::DoNotOptimize(verify_acyclic(mv.complex, Z));
}
BENCHMARK(BM_MayerVietorisAcyclic)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

static void BM_TensorFunctor(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto mv = build_mv_complex(build_cover(n), Ring::integers(1));
    tensor_trivial(mv.resolution());  // fills the product and relation caches
    for (auto _ : state) benchmark::DoNotOptimize(tensor_trivial(mv.resolution()));
}
BENCHMARK(BM_TensorFunctor)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

static void BM_HomFunctor(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto mv = build_mv_complex(build_cover(n), Ring::integers(1));
    hom_trivial(mv.resolution());  // fills the product and relation caches
    for (auto _ : state) benchmark::DoNotOptimize(hom_trivial(mv.resolution()));
}
BENCHMARK(BM_HomFunctor)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

static void BM_BarTor(benchmark::State& state) {
    const int degree = static_cast<int>(state.range(0));
    const Ring F2 = Ring::prime_field(2, 0);
    for (auto _ : state) benchmark::DoNotOptimize(bar_tor(2, F2, degree));
}
BENCHMARK(BM_BarTor)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

static void BM_ClassicalBarTor(benchmark::State& state) {
    const int degree = static_cast<int>(state.range(0));
    const Ring F2 = Ring::prime_field(2, 0);
    for (auto _ : state) benchmark::DoNotOptimize(tl_bar_tor(3, F2, degree));
}
BENCHMARK(BM_ClassicalBarTor)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);
