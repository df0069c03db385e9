#include <random>

#include "doctest.h"
#include "tilesim/simulator.hpp"
#include "tilesim/workload.hpp"

using namespace tilesim;

namespace {

// Independent straight-line reference for x -> x/2 + 1/2 applied per element.
std::vector<float> sequential_oracle(const std::vector<float>& input,
                                     std::uint64_t iterations) {
    std::vector<float> out = input;
    for (auto& v : out)
        for (std::uint64_t i = 0; i < iterations; ++i) v = 0.5f * v + 0.5f;
    return out;
}

std::vector<float> random_input(std::size_t n, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<float> dist(0.0f, 1.0f);
    std::vector<float> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

}  // namespace

TEST_CASE("builder structure") {
    auto sync = build_sync_baseline(1, 32, 0);
    CHECK(sync.n_tiles == 1);
    CHECK(sync.shared_buffers == 1);

    auto four = build_sync_baseline(4, 1024, 8);
    auto steps = compile_schedule(four, 256);
    REQUIRE(steps.size() == 12);  // 4 x (load, sync, compute)
    for (int i = 0; i < 4; ++i) {
        CHECK(steps[3 * i].kind == Step::Kind::SyncLoad);
        CHECK(steps[3 * i + 1].kind == Step::Kind::BlockSync);
        CHECK(steps[3 * i + 2].kind == Step::Kind::Compute);
        CHECK(steps[3 * i].tile == static_cast<std::uint32_t>(i + 1));
    }

    auto rb = build_register_bypass(2, 64, 1);
    CHECK(rb.shared_buffers == 1);

    auto ov = build_overlap(8, 1024, 1, 2, WaitKind::Pipeline);
    CHECK(ov.shared_buffers == 2);
    CHECK_THROWS_AS(build_overlap(8, 1024, 1, 1, WaitKind::Pipeline),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_overlap(8, 1024, 1, 9, WaitKind::Pipeline),
                    std::invalid_argument);

    // n_tiles == k: all copies are issued up front, no steady-state prefetch
    auto up_front = build_overlap(3, 16, 1, 3, WaitKind::Pipeline);
    auto s2 = compile_schedule(up_front, 32);
    int async_after_prefix = 0;
    for (std::size_t i = 3; i < s2.size(); ++i)
        if (s2[i].kind == Step::Kind::AsyncCopy) ++async_after_prefix;
    CHECK(async_after_prefix == 0);

    auto drop = build_drop_off(1, 0);
    auto s3 = compile_schedule(drop, 32);
    REQUIRE(s3.size() == 3);  // copy, wait, compute(0 iterations)
    CHECK(s3[0].kind == Step::Kind::AsyncCopy);
    CHECK(s3[1].kind == Step::Kind::WaitCopy);
}

TEST_CASE("drop off never synchronizes the block") {
    auto drop = build_drop_off(4096, 3);
    for (const auto& s : compile_schedule(drop, 256))
        CHECK(s.kind != Step::Kind::BlockSync);
}

TEST_CASE("emulate fixed points and known values") {
    SUBCASE("all ones stay ones for every pattern") {
        std::vector<float> ones(64, 1.0f);
        for (auto w : {build_sync_baseline(2, 32, 5), build_register_bypass(2, 32, 5),
                       build_overlap(2, 32, 5, 2, WaitKind::Barrier)}) {
            auto out = emulate(w, ones);
            for (float v : out) CHECK(v == 1.0f);
        }
        auto out = emulate(build_drop_off(64, 7), ones);
        for (float v : out) CHECK(v == 1.0f);
    }
    SUBCASE("zeros map to 0.5 after one iteration") {
        std::vector<float> zeros(32, 0.0f);
        auto out = emulate(build_sync_baseline(1, 32, 1), zeros);
        for (float v : out) CHECK(v == 0.5f);
    }
    SUBCASE("zeros map to 0.875 after three iterations") {
        std::vector<float> zeros(32, 0.0f);
        auto out = emulate(build_register_bypass(1, 32, 3), zeros);
        for (float v : out) CHECK(v == 0.875f);
    }
    SUBCASE("length mismatch is rejected") {
        std::vector<float> v(31, 0.0f);
        CHECK_THROWS_AS(emulate(build_sync_baseline(1, 32, 1), v),
                        std::invalid_argument);
    }
}

TEST_CASE("functional equivalence with the sequential oracle") {
    auto input = random_input(7 * 33, 123);
    auto expect = sequential_oracle(input, 5);
    CHECK(emulate(build_overlap(7, 33, 5, 3, WaitKind::Pipeline), input) == expect);
    CHECK(emulate(build_sync_baseline(7, 33, 5), input) == expect);
    CHECK(emulate(build_register_bypass(7, 33, 5), input) == expect);
    CHECK(emulate(build_drop_off(7 * 33, 5), input) == expect);
}

TEST_CASE("sync baseline and register bypass compute the same function") {
    std::mt19937 rng(9);
    for (int c = 0; c < 50; ++c) {
        std::uint64_t tiles = 1 + rng() % 8;
        std::uint64_t tile = 1 + rng() % 100;
        std::uint64_t it = rng() % 6;
        auto input = random_input(tiles * tile, 1000 + c);
        CHECK(emulate(build_sync_baseline(tiles, tile, it), input) ==
              emulate(build_register_bypass(tiles, tile, it), input));
    }
}

TEST_CASE("buffer safety holds for every overlap depth") {
    std::mt19937 rng(21);
    for (int c = 0; c < 200; ++c) {
        std::uint64_t tiles = 2 + rng() % 32;
        std::uint64_t k = 2 + rng() % (tiles - 1);
        auto w = build_overlap(tiles, 8 + rng() % 64, rng() % 4, k,
                               c % 2 ? WaitKind::Barrier : WaitKind::Pipeline);
        CHECK_NOTHROW(check_buffer_safety(w, compile_schedule(w, 64)));
    }
}

TEST_CASE("bytes accounting: each element is transferred exactly once") {
    std::mt19937 rng(31);
    for (int c = 0; c < 100; ++c) {
        std::uint64_t tiles = 2 + rng() % 16;
        std::uint64_t tile = 1 + rng() % 256;
        std::vector<Workload> ws{build_sync_baseline(tiles, tile, 1),
                                 build_register_bypass(tiles, tile, 1),
                                 build_overlap(tiles, tile, 1, 2, WaitKind::Pipeline),
                                 build_drop_off(tiles * tile, 1)};
        for (const auto& w : ws) {
            std::uint64_t copy_bytes = 0;
            for (const auto& s : compile_schedule(w, 64))
                if (s.kind == Step::Kind::SyncLoad || s.kind == Step::Kind::AsyncCopy)
                    copy_bytes += s.elements * kBytesPerElement;
            CHECK(copy_bytes == tiles * tile * 4);
        }
    }
}

TEST_CASE("monotone convergence toward the fixed point") {
    std::vector<float> input{0.0f, 0.25f, 0.5f, 0.9f};
    std::vector<float> prev = input;
    for (std::uint64_t it = 1; it <= 20; ++it) {
        auto out = emulate(build_sync_baseline(1, 4, it), input);
        for (std::size_t i = 0; i < out.size(); ++i) {
            CHECK(out[i] >= prev[i]);
            CHECK(out[i] <= 1.0f);
        }
        prev = out;
    }
}

TEST_CASE("schedule json lists steps and sync points") {
    auto w = build_overlap(3, 16, 2, 2, WaitKind::Pipeline);
    auto j = schedule_json(w, 32);
    CHECK(j.find("\"overlap\"") != std::string::npos);
    CHECK(j.find("async_copy") != std::string::npos);
    CHECK(j.find("block_sync") != std::string::npos);
    CHECK(j == schedule_json(w, 32));  // stable golden output
}

TEST_CASE("register bypass is slower than overlap on the same instance") {
    MachineParams m = a100_like();
    GridConfig grid{1, 64, 0};
    auto rb = simulate(build_register_bypass(2, 64, 1), m, grid);
    auto ov = simulate(build_overlap(2, 64, 1, 2, WaitKind::Pipeline), m, grid);
    CHECK(rb.elapsed > ov.elapsed);
}

TEST_CASE("drop off beats overlap k=2 on element-granular work") {
    MachineParams m = a100_like();
    GridConfig grid{1, 256, 0};
    // Same totals at one element per thread per step: 8 tiles of 256 elements
    // vs 2048 independent elements, with the copies hidden under compute so
    // the block synchronization is the only difference left.
    auto ov = simulate(build_overlap(8, 256, 16, 2, WaitKind::Pipeline), m, grid);
    auto drop = simulate(build_drop_off(2048, 16), m, grid);
    CHECK(drop.elapsed < ov.elapsed);
}
