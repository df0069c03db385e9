#include <benchmark/benchmark.h>

#include "tilesim/simulator.hpp"
#include "tilesim/sweep.hpp"

using namespace tilesim;

static void BM_SimulateSync(benchmark::State& state) {
    MachineParams m = a100_like();
    GridConfig grid{static_cast<int>(state.range(0)), 256, 0};
    auto w = build_sync_baseline(16, 1024, 2);
    for (auto _ : state) benchmark::DoNotOptimize(simulate(w, m, grid));
}
BENCHMARK(BM_SimulateSync)->Arg(1)->Arg(32)->Arg(256);

static void BM_SimulateOverlap(benchmark::State& state) {
    MachineParams m = a100_like();
    GridConfig grid{static_cast<int>(state.range(0)), 256, 0};
    auto w = build_overlap(16, 1024, 2, 4, WaitKind::Pipeline);
    for (auto _ : state) benchmark::DoNotOptimize(simulate(w, m, grid));
}
BENCHMARK(BM_SimulateOverlap)->Arg(1)->Arg(32)->Arg(256);

static void BM_SweepCell(benchmark::State& state) {
    MachineParams m = a100_like();
    SweepConfig c;
    c.total_bytes = 1 << 20;
    c.iterations_list = {1};
    c.tile_elements_list = {1024};
    c.blocks_list = {static_cast<int>(state.range(0))};
    c.threads_per_block_list = {256};
    c.inflight_list = {2};
    c.wait_kinds = {WaitKind::Pipeline};
    c.patterns = {PatternKind::SyncBaseline, PatternKind::Overlap};
    for (auto _ : state) {
        auto rows = run_sweep(c, m);
        apply_speedups(rows);
        benchmark::DoNotOptimize(rows.data());
    }
}
BENCHMARK(BM_SweepCell)->Arg(8)->Arg(108);

BENCHMARK_MAIN();
