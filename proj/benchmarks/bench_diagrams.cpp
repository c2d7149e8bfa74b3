#include <benchmark/benchmark.h>

#include <random>

#include "dtl/algebra.hpp"
#include "dtl/idempotents.hpp"

using namespace dtl;

static void BM_EnumerateBasis(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_basis(n));
}
BENCHMARK(BM_EnumerateBasis)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

static void BM_MultiplyDiagrams(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto& basis = DiagramBasis::get(n);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    std::vector<std::pair<Diagram, Diagram>> pairs;
    for (int i = 0; i < 1024; ++i) pairs.emplace_back(basis[pick(rng)], basis[pick(rng)]);
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& [a, b] = pairs[i++ & 1023];
        benchmark::DoNotOptimize(multiply_diagrams(a, b));
    }
}
BENCHMARK(BM_MultiplyDiagrams)->DenseRange(2, 8, 2);

static void BM_ElementProduct(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Ring R = Ring::polynomial();
    auto one = identity_element(n, R);
    for (auto _ : state) benchmark::DoNotOptimize(one * one);
}
BENCHMARK(BM_ElementProduct)->DenseRange(2, 5)->Unit(benchmark::kMicrosecond);

static void BM_FindIdempotent(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::vector<LinkState> states;
    for (const auto& p : enumerate_link_states(n))
        if (p.defect_count() > 0) states.push_back(p);
    for (auto _ : state)
        for (const auto& p : states) benchmark::DoNotOptimize(find_idempotent(p));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(states.size()));
}
BENCHMARK(BM_FindIdempotent)->DenseRange(3, 6)->Unit(benchmark::kMicrosecond);
