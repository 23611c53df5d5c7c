#include <benchmark/benchmark.h>

#include "blend/driver.hpp"
#include "blend/models/tandem_queue.hpp"

#include <string>

namespace {

blend::models::TandemQueueModel model_with_caps(int cap) {
    blend::models::TandemQueueModel m;
    m.cap1 = cap;
    m.cap2 = cap;
    return m;
}

void BM_StationarySolve(benchmark::State& state) {
    const auto m = model_with_caps(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(blend::models::evaluate_blocking(m));
    }
    state.SetLabel(std::to_string(m.state_count()) + " states");
}
BENCHMARK(BM_StationarySolve)->Arg(5)->Arg(10)->Arg(20);

// Full sensitivity run: one stationary solve per stencil point.
void BM_QueueSensitivity(benchmark::State& state) {
    const auto m = model_with_caps(10);
    const unsigned threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        const auto f = blend::models::queue_sensitivity_oracle(m);
        benchmark::DoNotOptimize(blend::run_blend(f, m.lambda, {}, {threads}));
    }
}
BENCHMARK(BM_QueueSensitivity)->Arg(0)->Arg(4)->UseRealTime();

} // namespace
