// Serial against OpenMP kernels.

#include <benchmark/benchmark.h>

#include "manin/characters.hpp"
#include "manin/counting.hpp"

using namespace manin;

static void BM_direct_serial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(direct_count_serial(-1, Rational(st.range(0))).count);
}
static void BM_direct_parallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(direct_count(-1, Rational(st.range(0))).count);
}
static void BM_torsor_serial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(torsor_count_serial(-1, Rational(st.range(0))).count);
}
static void BM_torsor_parallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(torsor_count(-1, Rational(st.range(0))).count);
}
static void BM_head_sum_serial(benchmark::State& st) {
    CharacterChi chi(-5);
    for (auto _ : st) benchmark::DoNotOptimize(chi.head_sum_serial(st.range(0)));
}
static void BM_head_sum_parallel(benchmark::State& st) {
    CharacterChi chi(-5);
    for (auto _ : st) benchmark::DoNotOptimize(chi.head_sum(st.range(0)));
}

BENCHMARK(BM_direct_serial)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_direct_parallel)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_torsor_serial)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_torsor_parallel)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_head_sum_serial)->Arg(10'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_head_sum_parallel)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
