#include <benchmark/benchmark.h>

#include <cmath>

#include "blend/bounds.hpp"
#include "blend/driver.hpp"
#include "blend/series.hpp"

namespace {

void BM_StencilWeights(benchmark::State& state) {
    const int order = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(blend::stencil_weights(order));
    }
}
BENCHMARK(BM_StencilWeights)->Arg(8)->Arg(20)->Arg(40);

void BM_PartialSums(benchmark::State& state) {
    const int n_max = static_cast<int>(state.range(0));
    const blend::FunctionOracle f([](double t) { return std::sin(t); });
    for (auto _ : state) {
        benchmark::DoNotOptimize(blend::blend_partial_sums(f, 0.3, 0.01, n_max, {0}));
    }
}
BENCHMARK(BM_PartialSums)->Arg(8)->Arg(20)->Arg(40);

void BM_RunBlendRefining(benchmark::State& state) {
    const blend::FunctionOracle f([](double t) { return std::sin(t); });
    blend::BlendConfig cfg;
    cfg.h0 = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(blend::run_blend(f, 0.0, cfg, {0}));
    }
}
BENCHMARK(BM_RunBlendRefining);

void BM_StepSolver(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(blend::solve_k_exact_step({120.0, 2.4}, 2, 6, blend::BoundFormula::eq12));
    }
}
BENCHMARK(BM_StepSolver);

} // namespace
