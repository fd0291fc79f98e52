#include <benchmark/benchmark.h>

#include "subgrad/theory.hpp"

using namespace subgrad;

static void BM_PolyakTightRun(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const auto tight = build_polyak_tight_instance(n);
    const auto oracle = make_pa_oracle(tight.function, tight.f_star, 1.0);
    const auto space = ProjectableSet::whole_space();
    for (auto _ : state) {
        auto trace = subgradient_method(oracle, space, tight.x1, n, Polyak{});
        benchmark::DoNotOptimize(trace.f_final);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PolyakTightRun)->RangeMultiplier(2)->Range(4, 64)->Complexity();

static void BM_BuildTightInstance(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto inst = build_polyak_tight_instance(n);
        benchmark::DoNotOptimize(inst.predicted_last_value);
    }
}
BENCHMARK(BM_BuildTightInstance)->RangeMultiplier(2)->Range(4, 128);

static void BM_MinEigenvalue(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const auto q = matrix_Q_polyak(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(min_eigenvalue(q, 1e-12));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MinEigenvalue)->RangeMultiplier(2)->Range(8, 128)->Complexity();

static void BM_Cholesky(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const auto gram = matrix_A_gram(n);
    for (auto _ : state) {
        auto r = cholesky_upper(gram.q);
        benchmark::DoNotOptimize(r(0, 0));
    }
}
BENCHMARK(BM_Cholesky)->RangeMultiplier(2)->Range(8, 256);

static void BM_RatePolyak(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(rate_polyak(n, 1.0, 1.0));
    }
}
BENCHMARK(BM_RatePolyak)->Arg(10)->Arg(100)->Arg(1000);

static void BM_AlternatingProjection(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const auto tight = build_altproj_tight_instance(n);
    for (auto _ : state) {
        auto trace = alternating_projection(tight.c1, tight.c2, tight.x1, n);
        benchmark::DoNotOptimize(trace.final_distance);
    }
}
BENCHMARK(BM_AlternatingProjection)->RangeMultiplier(4)->Range(16, 1024);

BENCHMARK_MAIN();
