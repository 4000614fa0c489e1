// Serial reference vs OpenMP kernels: indicator sweep and system assembly.

#include <benchmark/benchmark.h>

#include "dsm/dsm_core.hpp"
#include "dsm/forward_model.hpp"
#include "dsm/pipeline.hpp"
#include "dsm/scenarios.hpp"

namespace {

const dsm::WaveContext ctx;

struct Fixture {
    dsm::CellGrid cells;
    dsm::FieldSamples near;
    dsm::FieldSamples far;
};

const Fixture& fixture() {
    static const Fixture f = [] {
        const dsm::Scenario s = dsm::build_scenario("ex2");
        dsm::ForwardOptions opts;
        opts.refine = false;
        const dsm::ForwardResult fwd = dsm::simulate(ctx, s.shapes, s.incidents, opts);
        return Fixture{fwd.grid, dsm::measure_near(ctx, fwd, 0), dsm::measure_far(ctx, fwd, 0)};
    }();
    return f;
}

dsm::SamplingGrid bench_grid() { return dsm::SamplingGrid::make(-2.0, 2.0, -2.0, 2.0, 0.02); }

void BM_IndicatorFarSerial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(dsm::indicator_grid_serial(ctx, fixture().far, bench_grid()));
}
void BM_IndicatorFarParallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(dsm::indicator_grid(ctx, fixture().far, bench_grid()));
}
void BM_IndicatorNearSerial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(dsm::indicator_grid_serial(ctx, fixture().near, bench_grid()));
}
void BM_IndicatorNearParallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(dsm::indicator_grid(ctx, fixture().near, bench_grid()));
}
void BM_AssembleSerial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(dsm::assemble_system_serial(ctx, fixture().cells));
}
void BM_AssembleParallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(dsm::assemble_system(ctx, fixture().cells));
}

}  // namespace

BENCHMARK(BM_IndicatorFarSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IndicatorFarParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_IndicatorNearSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IndicatorNearParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AssembleSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssembleParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
