#pragma once

#include <cstdint>
#include <vector>

#include "tilesim/machine.hpp"
#include "tilesim/workload.hpp"

namespace tilesim {

struct GridConfig {
    int blocks = 1;
    int threads_per_block = 32;
    // When nonzero, overrides the pattern's shared-memory footprint (used to
    // starve occupancy). Must be >= the pattern's own footprint.
    std::uint64_t shared_override_bytes = 0;
};

struct SimResult {
    std::uint64_t elapsed = 0;       // cycles
    std::uint64_t bytes_moved = 0;
    std::uint64_t flops = 0;
    double achieved_gflops = 0.0;
    double achieved_bw_gbs = 0.0;
    int blocks_resident_per_sm = 0;

    bool operator==(const SimResult&) const = default;
};

// Deterministic event-driven run of `workload` replicated over grid.blocks
// thread blocks. Throws UnschedulableError / std::logic_error per the
// workload and occupancy contracts.
SimResult simulate(const Workload& workload, const MachineParams& machine,
                   const GridConfig& grid);

struct RepeatSummary {
    double mean_elapsed = 0.0;
    double stddev_elapsed = 0.0;  // sample (n-1) stddev, 0 for a single run
};

struct RepeatedRuns {
    std::vector<SimResult> runs;
    RepeatSummary summary;
};

// Runs `warmup` discarded runs followed by `repeats` recorded ones. The core
// is deterministic, so without injected jitter all runs are identical; `seed`
// is accepted for interface stability and currently unused.
RepeatedRuns run_repeated(const Workload& workload, const MachineParams& machine,
                          const GridConfig& grid, int repeats, int warmup,
                          std::uint64_t seed = 0);

}  // namespace tilesim
