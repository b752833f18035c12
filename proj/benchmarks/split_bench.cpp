#include <benchmark/benchmark.h>

#include "nildiag/canonical.hpp"
#include "nildiag/splitter.hpp"
#include "nildiag/verify.hpp"
#include "nildiag_tools/acceptance.hpp"

using namespace nildiag;

static void BM_FieldMul(benchmark::State& state) {
    const FieldSpec f = make_field(static_cast<unsigned>(state.range(0)));
    Fe x{3}, y{5};
    for (auto _ : state) {
        x = f.mul(x, y);
        y = f.add(y, kOne);
        benchmark::DoNotOptimize(x);
    }
}
BENCHMARK(BM_FieldMul)->Arg(2)->Arg(8)->Arg(16);

static void BM_Rcf(benchmark::State& state) {
    const FieldSpec f = make_field(4);
    tools::Rng rng(1);
    const Mat a = tools::random_matrix(f, static_cast<std::size_t>(state.range(0)), rng);
    for (auto _ : state) benchmark::DoNotOptimize(rcf(a));
}
BENCHMARK(BM_Rcf)->Arg(4)->Arg(8)->Arg(12)->Arg(24);

static void BM_SplitAny(benchmark::State& state) {
    const FieldSpec f = make_field(4);
    tools::Rng rng(2);
    const Mat a = tools::random_matrix(f, static_cast<std::size_t>(state.range(0)), rng);
    for (auto _ : state) benchmark::DoNotOptimize(split_any(a));
}
BENCHMARK(BM_SplitAny)->Arg(4)->Arg(8)->Arg(12)->Arg(24);

static void BM_SplitDerogatory(benchmark::State& state) {
    const FieldSpec f = make_field(3);
    tools::Rng rng(3);
    const Mat a = tools::random_derogatory(f, static_cast<std::size_t>(state.range(0)), rng);
    for (auto _ : state) benchmark::DoNotOptimize(split_any(a));
}
BENCHMARK(BM_SplitDerogatory)->Arg(8)->Arg(12);

static void BM_SplitF2(benchmark::State& state) {
    const FieldSpec f = make_field(1);
    tools::Rng rng(4);
    const Mat a = tools::random_matrix(f, static_cast<std::size_t>(state.range(0)), rng);
    for (auto _ : state) benchmark::DoNotOptimize(split_f2(a));
}
BENCHMARK(BM_SplitF2)->Arg(8)->Arg(16);

static void BM_CheckCertificate(benchmark::State& state) {
    const FieldSpec f = make_field(4);
    tools::Rng rng(5);
    const Mat a = tools::random_matrix(f, 12, rng);
    const SplitCertificate cert = split_any(a);
    for (auto _ : state) benchmark::DoNotOptimize(check_certificate(a, cert));
}
BENCHMARK(BM_CheckCertificate);

static void BM_BruteForceOrderFour(benchmark::State& state) {
    const FieldSpec f = make_field(1);
    const Mat a(f, {{0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 1}});
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_exists(a, 3, 2));
}
BENCHMARK(BM_BruteForceOrderFour)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
