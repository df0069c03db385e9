#include "doctest.h"
#include "tilesim/simulator.hpp"
#include "tilesim/workload.hpp"

using namespace tilesim;

namespace {

MachineParams micro_machine() {
    MachineParams m = a100_like();
    m.sm_count = 1;
    m.max_warps_per_sm = 64;
    m.max_blocks_per_sm = 32;
    m.global_latency = 100;
    m.global_bandwidth = 32.0;
    m.sync_issue_cost = 4;
    m.async_issue_cost = 1;
    return m;
}

}  // namespace

TEST_CASE("single warp single tile reference timings") {
    MachineParams m = micro_machine();
    GridConfig grid{1, 32, 0};
    // One 32-element tile = 128 bytes = 4 cycles of streaming.
    SUBCASE("synchronous load: issue 4 + latency 100 + stream 4 = 108") {
        auto r = simulate(build_sync_baseline(1, 32, 0), m, grid);
        CHECK(r.elapsed == 108);
        CHECK(r.bytes_moved == 128);
        CHECK(r.flops == 0);
    }
    SUBCASE("async copy: issue 1, completes at 1 + 100 + 4 = 105") {
        auto r = simulate(build_register_bypass(1, 32, 0), m, grid);
        CHECK(r.elapsed == 105);
        CHECK(r.bytes_moved == 128);
    }
}

TEST_CASE("invalid grids are rejected") {
    MachineParams m = micro_machine();
    CHECK_THROWS_AS(simulate(build_sync_baseline(1, 32, 0), m, GridConfig{0, 32, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(simulate(build_sync_baseline(1, 32, 0), m, GridConfig{1, 0, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(simulate(build_sync_baseline(1, 32, 0), m, GridConfig{1, 33, 0}),
                    std::invalid_argument);
}

TEST_CASE("determinism: identical runs produce identical results") {
    MachineParams m = a100_like();
    GridConfig grid{8, 128, 0};
    auto w = build_overlap(16, 512, 2, 4, WaitKind::Pipeline);
    auto a = simulate(w, m, grid);
    auto b = simulate(w, m, grid);
    CHECK(a == b);
}

TEST_CASE("run_repeated is deterministic with zero spread") {
    MachineParams m = a100_like();
    GridConfig grid{4, 64, 0};
    auto w = build_sync_baseline(4, 256, 1);
    auto rr = run_repeated(w, m, grid, 5, 2);
    CHECK(rr.runs.size() == 5);
    CHECK(rr.summary.stddev_elapsed == 0.0);
    CHECK(rr.summary.mean_elapsed ==
          static_cast<double>(simulate(w, m, grid).elapsed));
    for (const auto& run : rr.runs) CHECK(run == rr.runs.front());
}

TEST_CASE("elapsed grows with latency and shrinks with bandwidth") {
    GridConfig grid{1, 32, 0};
    auto w = build_sync_baseline(4, 512, 0);
    MachineParams lo = micro_machine();
    MachineParams hi = micro_machine();
    hi.global_latency = 400;
    CHECK(simulate(w, hi, grid).elapsed > simulate(w, lo, grid).elapsed);

    MachineParams fast = micro_machine();
    fast.global_bandwidth = 128.0;
    CHECK(simulate(w, fast, grid).elapsed < simulate(w, lo, grid).elapsed);
}

TEST_CASE("async overlap hides latency relative to sync") {
    MachineParams m = a100_like();
    GridConfig grid{1, 256, 0};
    auto sync = simulate(build_sync_baseline(16, 1024, 2), m, grid);
    auto ov = simulate(build_overlap(16, 1024, 2, 4, WaitKind::Pipeline), m, grid);
    CHECK(ov.elapsed < sync.elapsed);
    CHECK(ov.bytes_moved == sync.bytes_moved);
    CHECK(ov.flops == sync.flops);
}

TEST_CASE("two resident blocks hide latency versus one long block") {
    MachineParams m = micro_machine();
    // Same total work: 8 tiles in one block vs 4 tiles in each of two blocks.
    auto one = simulate(build_sync_baseline(8, 32, 0), m, GridConfig{1, 32, 0});
    auto two = simulate(build_sync_baseline(4, 32, 0), m, GridConfig{2, 32, 0});
    CHECK(two.elapsed < one.elapsed);
    CHECK(two.bytes_moved == one.bytes_moved);
}

TEST_CASE("wave scheduling: more blocks than residency still completes") {
    MachineParams m = micro_machine();
    m.max_blocks_per_sm = 2;
    auto r = simulate(build_sync_baseline(1, 32, 1), m, GridConfig{7, 32, 0});
    CHECK(r.bytes_moved == 7u * 128u);
    CHECK(r.flops == 7u * 32u * 2u);
    CHECK(r.blocks_resident_per_sm == 2);
}

TEST_CASE("starved occupancy slows sync far more than async") {
    MachineParams m = a100_like();
    auto w_sync = build_sync_baseline(16, 1024, 1);
    auto w_async = build_overlap(16, 1024, 1, 4, WaitKind::Pipeline);
    GridConfig full{216, 64, 0};
    GridConfig starved{216, 64, m.shared_mem_per_sm};
    double sync_slow = static_cast<double>(simulate(w_sync, m, starved).elapsed) /
                       static_cast<double>(simulate(w_sync, m, full).elapsed);
    double async_slow = static_cast<double>(simulate(w_async, m, starved).elapsed) /
                        static_cast<double>(simulate(w_async, m, full).elapsed);
    CHECK(sync_slow >= 1.5);
    CHECK(sync_slow > async_slow);
}

TEST_CASE("derived rates are consistent with elapsed cycles") {
    MachineParams m = a100_like();
    auto r = simulate(build_sync_baseline(8, 1024, 4), m, GridConfig{4, 128, 0});
    double secs = static_cast<double>(r.elapsed) / (m.clock_ghz * 1e9);
    CHECK(r.achieved_gflops ==
          doctest::Approx(static_cast<double>(r.flops) / secs / 1e9));
    CHECK(r.achieved_bw_gbs ==
          doctest::Approx(static_cast<double>(r.bytes_moved) / secs / 1e9));
}

TEST_CASE("barrier wait is never faster than pipeline wait") {
    MachineParams m = a100_like();
    GridConfig grid{2, 128, 0};
    auto bar = simulate(build_overlap(12, 512, 1, 3, WaitKind::Barrier), m, grid);
    auto pipe = simulate(build_overlap(12, 512, 1, 3, WaitKind::Pipeline), m, grid);
    CHECK(bar.elapsed >= pipe.elapsed);
}
