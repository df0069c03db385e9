#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tilesim/simulator.hpp"

namespace tilesim {

enum class OccupancyMode { Full, Starved };

const char* to_string(OccupancyMode m);
OccupancyMode occupancy_mode_from_string(const std::string& s);

struct SweepConfig {
    std::uint64_t total_bytes = 64ull << 20;  // desk scale; paper scale is 8 GiB
    std::vector<std::uint64_t> iterations_list;
    std::vector<std::uint64_t> tile_elements_list;
    std::vector<int> blocks_list;
    std::vector<int> threads_per_block_list;
    std::vector<std::uint64_t> inflight_list;
    std::vector<WaitKind> wait_kinds;
    std::vector<PatternKind> patterns;
    OccupancyMode occupancy_mode = OccupancyMode::Full;
    int repeats = 1;
    int warmup = 0;
    std::uint64_t seed = 0;

    void validate() const;  // throws std::invalid_argument
};

SweepConfig sweep_from_json_text(const std::string& text);
std::string sweep_to_json_text(const SweepConfig& config);
SweepConfig load_sweep_file(const std::string& path);

struct SweepRow {
    PatternKind pattern = PatternKind::SyncBaseline;
    bool has_wait = false;
    WaitKind wait = WaitKind::Pipeline;
    std::uint64_t iterations = 0;
    double ai = 0.0;
    std::uint64_t tile_elements = 0;
    int blocks = 0;
    int threads = 0;
    std::uint64_t inflight = 0;
    OccupancyMode occupancy = OccupancyMode::Full;
    std::optional<SimResult> result;
    double speedup = 0.0;   // filled by apply_speedups; 1.0 on baseline rows
    std::string error;      // nonempty for unschedulable coordinates
};

// FLOPs per byte of the microbenchmark at a given iteration count:
// 2 flops/iteration over 8 bytes of traffic per element (4 read + 4 written).
double arithmetic_intensity(std::uint64_t iterations);

// Returns a copy of `config` whose per-block shared allocation is raised to
// the whole SM, forcing occupancy() == 1.
SweepConfig starve_occupancy(const SweepConfig& config, const MachineParams& machine);

// Cartesian product of the coordinate lists, in canonical order:
// pattern, wait, iterations, tile, blocks, threads, inflight. Unschedulable
// coordinates become error rows, not aborts.
std::vector<SweepRow> run_sweep(const SweepConfig& config, const MachineParams& machine);

// Decorates async rows with sync_elapsed / async_elapsed at matching
// coordinates. Idempotent. Throws std::runtime_error naming the first
// coordinate missing its SyncBaseline row.
void apply_speedups(std::vector<SweepRow>& rows);

// Header:
// pattern,wait,iterations,ai,tile_elems,blocks,threads,inflight,occupancy,
// elapsed_cycles,gflops,gbs,speedup,error
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace tilesim
