#include "egamma/analytic.hpp"
#include "egamma/combinatorics.hpp"
#include "egamma/criterion.hpp"
#include "egamma/pade.hpp"

#include <benchmark/benchmark.h>

using namespace egamma;

static void BM_lcm_upto(benchmark::State& state) {
    const auto n = static_cast<unsigned long>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(lcm_upto(n));
}
BENCHMARK(BM_lcm_upto)->Arg(100)->Arg(1000)->Arg(10000);

static void BM_legendre_shifted(benchmark::State& state) {
    const auto n = static_cast<unsigned long>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(legendre_shifted(n));
}
BENCHMARK(BM_legendre_shifted)->Arg(20)->Arg(200);

static void BM_L_nm(benchmark::State& state) {
    const long n = state.range(0);
    const Precision prec = working_precision(n, 53);
    for (auto _ : state) benchmark::DoNotOptimize(L_nm(n, 1, prec));
}
BENCHMARK(BM_L_nm)->Arg(20)->Arg(100)->Arg(400);

static void BM_criterion_row(benchmark::State& state) {
    const long n = state.range(0);
    criterion_row(n, 0, 53);  // fill the cached gamma reference outside the timing
    for (auto _ : state) benchmark::DoNotOptimize(criterion_row(n, 0, 53));
}
BENCHMARK(BM_criterion_row)->Arg(20)->Arg(100)->Arg(200);

static void BM_sweep(benchmark::State& state) {
    criterion_row(state.range(0), 0, 53);
    for (auto _ : state) benchmark::DoNotOptimize(sweep(state.range(0), {0, 1, 2, 3}, 53));
}
BENCHMARK(BM_sweep)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_gamma_classic(benchmark::State& state) {
    const int digits = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(gamma_classic(digits));
}
BENCHMARK(BM_gamma_classic)->Arg(15)->Arg(50)->Unit(benchmark::kMillisecond);

static void BM_gamma_new(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(gamma_new(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_gamma_new)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_J_direct(benchmark::State& state) {
    const Real tol = Real::pow2(-107);
    for (auto _ : state) benchmark::DoNotOptimize(J_direct(state.range(0), 0, tol));
}
BENCHMARK(BM_J_direct)->Arg(5)->Arg(30)->Unit(benchmark::kMillisecond);

static void BM_tilde_L(benchmark::State& state) {
    const long p = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(tilde_L(p, 1));
}
BENCHMARK(BM_tilde_L)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

static void BM_pade_log1p(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(pade_log1p(static_cast<unsigned long>(state.range(0))));
}
BENCHMARK(BM_pade_log1p)->Arg(8)->Arg(32);

BENCHMARK_MAIN();
