#include <benchmark/benchmark.h>

#include <random>

#include "dtl/smith.hpp"
#include "dtl/sparse_matrix.hpp"

using namespace dtl;

namespace {

SparseMatrix random_matrix(const Ring& ring, std::size_t size, double density, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0, 1);
    std::uniform_int_distribution<int> value(-3, 3);
    std::vector<SparseMatrix::Entry> entries;
    for (std::uint32_t i = 0; i < size; ++i)
        for (std::uint32_t j = 0; j < size; ++j)
            if (coin(rng) < density)
                if (int v = value(rng); v != 0) entries.push_back({i, j, ring.from_integer(v)});
    return SparseMatrix::from_entries(ring, size, size, std::move(entries));
}

}  // namespace

static void BM_SmithNormalForm(benchmark::State& state) {
    const Ring Z = Ring::integers(0);
    auto m = random_matrix(Z, static_cast<std::size_t>(state.range(0)), 0.05, 11);
    for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
// Random dense-ish integer input shows coefficient growth past 128.
BENCHMARK(BM_SmithNormalForm)->RangeMultiplier(2)->Range(32, 128)->Unit(benchmark::kMillisecond);

static void BM_RankOverF2(benchmark::State& state) {
    const Ring F2 = Ring::prime_field(2, 0);
    auto m = random_matrix(F2, static_cast<std::size_t>(state.range(0)), 0.05, 13);
    for (auto _ : state) benchmark::DoNotOptimize(matrix_rank(m));
}
BENCHMARK(BM_RankOverF2)->RangeMultiplier(2)->Range(32, 512)->Unit(benchmark::kMillisecond);
