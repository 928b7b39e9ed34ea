// Benchmark: batched elimination (parallel lane) against the serial
// reference elimination, over a workload shaped like the graded callers'
// (many independent matrices, one per internal degree).

#include "adams/gf2.hpp"
#include "adams/gf2_reference.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

namespace {

std::vector<adams::gf2::Matrix> make_batch(int count, int rows, int cols) {
    std::mt19937 rng(20250825);
    std::vector<adams::gf2::Matrix> mats;
    mats.reserve(count);
    for (int i = 0; i < count; ++i) {
        adams::gf2::Matrix m(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                if (rng() % 2) m.set(r, c, true);
        mats.push_back(std::move(m));
    }
    return mats;
}

void bench_serial_reference(benchmark::State& state) {
    auto mats = make_batch(int(state.range(0)), int(state.range(1)), int(state.range(1)));
    for (auto _ : state) {
        int total = 0;
        for (const auto& m : mats) total += adams::gf2::reference::rank(m);
        benchmark::DoNotOptimize(total);
    }
    state.SetItemsProcessed(state.iterations() * mats.size());
}

void bench_eliminate_batch(benchmark::State& state) {
    auto mats = make_batch(int(state.range(0)), int(state.range(1)), int(state.range(1)));
    int jobs = int(state.range(2));
    for (auto _ : state) {
        auto result = adams::gf2::eliminate_batch(mats, jobs);
        benchmark::DoNotOptimize(result.data());
    }
    state.SetItemsProcessed(state.iterations() * mats.size());
}

}  // namespace

BENCHMARK(bench_serial_reference)
    ->Args({64, 64})
    ->Args({64, 256})
    ->Args({256, 128})
    ->Unit(benchmark::kMillisecond);

BENCHMARK(bench_eliminate_batch)
    ->Args({64, 64, 1})
    ->Args({64, 64, 4})
    ->Args({64, 256, 1})
    ->Args({64, 256, 4})
    ->Args({256, 128, 1})
    ->Args({256, 128, 4})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
