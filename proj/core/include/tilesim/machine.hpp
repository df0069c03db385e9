#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "tilesim/roofline.hpp"

namespace tilesim {

struct UnschedulableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Simulator calibration surface. Time unit is the cycle; GB/s and GFLOP/s
// are derived through `clock_ghz` at reporting time.
struct MachineParams {
    double clock_ghz = 1.0;
    int sm_count = 1;
    int max_warps_per_sm = 64;
    int max_blocks_per_sm = 32;
    std::uint64_t shared_mem_per_sm = 0;   // bytes
    std::uint64_t global_latency = 0;      // cycles
    double global_bandwidth = 1.0;         // bytes per cycle, device-wide
    int async_channels_per_sm = 1;
    std::uint64_t async_issue_cost = 1;    // cycles
    std::uint64_t sync_issue_cost = 1;     // cycles
    std::uint64_t flops_per_cycle_per_warp = 1;
    int warp_width = 32;

    void validate() const;  // throws std::invalid_argument

    double peak_gflops() const {
        return static_cast<double>(sm_count) * max_warps_per_sm *
               static_cast<double>(flops_per_cycle_per_warp) * clock_ghz;
    }
    double bandwidth_gbs() const { return global_bandwidth * clock_ghz; }
    Roofline roofline() const { return {peak_gflops(), bandwidth_gbs()}; }
};

MachineParams a100_like();
MachineParams v100_like();

// Resolves "a100-like", "v100-like", or a JSON profile path.
MachineParams load_machine(const std::string& name_or_path);
MachineParams machine_from_json_text(const std::string& text);
std::string machine_to_json_text(const MachineParams& m);

// Blocks resident per SM:
//   min(max_blocks, floor(shared/shared_per_block), floor(warps*width/threads))
// Throws UnschedulableError when the block cannot fit at all.
int occupancy(const MachineParams& machine, std::uint64_t shared_per_block,
              int threads_per_block);

}  // namespace tilesim
