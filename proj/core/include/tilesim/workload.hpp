#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tilesim {

enum class PatternKind { SyncBaseline, RegisterBypass, Overlap, DropOff };
enum class WaitKind { Barrier, Pipeline };

const char* to_string(PatternKind p);
const char* to_string(WaitKind w);
PatternKind pattern_from_string(const std::string& s);
WaitKind wait_from_string(const std::string& s);

// True for the patterns whose wait discipline is selectable. SyncBaseline has
// no wait at all; DropOff always waits per thread.
bool pattern_has_wait_kind(PatternKind p);

constexpr std::uint64_t kBytesPerElement = 4;   // fp32
constexpr std::uint64_t kFlopsPerIteration = 2; // one multiply, one add

// A per-block pattern program: a stream of tiles, each run through
// `iterations` applications of x -> x/2 + 1/2. For DropOff, n_tiles is the
// per-block element count and tile_elements is 1.
struct Workload {
    PatternKind pattern = PatternKind::SyncBaseline;
    std::uint64_t n_tiles = 0;
    std::uint64_t tile_elements = 1;
    std::uint64_t iterations = 0;
    std::uint64_t inflight_k = 1;       // Overlap prefetch depth
    std::uint64_t shared_buffers = 1;
    WaitKind wait_kind = WaitKind::Pipeline;

    std::uint64_t total_elements() const { return n_tiles * tile_elements; }
    std::uint64_t total_bytes() const { return total_elements() * kBytesPerElement; }
    std::uint64_t total_flops() const {
        return total_elements() * iterations * kFlopsPerIteration;
    }
    // Shared-memory footprint of one block. DropOff stages one element per
    // thread, the tiled patterns hold shared_buffers whole tiles.
    std::uint64_t shared_bytes(int threads_per_block) const;
};

Workload build_sync_baseline(std::uint64_t n_tiles, std::uint64_t tile_elements,
                             std::uint64_t iterations);
Workload build_register_bypass(std::uint64_t n_tiles, std::uint64_t tile_elements,
                               std::uint64_t iterations,
                               WaitKind wait = WaitKind::Pipeline);
// Requires 2 <= k <= n_tiles; uses k circular buffers.
Workload build_overlap(std::uint64_t n_tiles, std::uint64_t tile_elements,
                       std::uint64_t iterations, std::uint64_t k, WaitKind wait);
Workload build_drop_off(std::uint64_t n_elements, std::uint64_t iterations);

// One step of a compiled per-block schedule. `elements` is the element count
// the step covers (a tile, or one element-per-thread round for DropOff).
struct Step {
    enum class Kind { SyncLoad, AsyncCopy, WaitCopy, BlockSync, Compute };
    Kind kind;
    std::uint32_t tile = 0;    // 1-based
    std::uint32_t buffer = 0;
    std::uint64_t elements = 0;
};

const char* to_string(Step::Kind k);

// Expands the workload into the explicit step program one block runs.
// threads_per_block only affects DropOff (its round size).
std::vector<Step> compile_schedule(const Workload& w, int threads_per_block);

// Static check: no copy may target a buffer whose previous tile has not been
// consumed. Throws std::logic_error naming the offending step.
void check_buffer_safety(const Workload& w, const std::vector<Step>& steps);

// JSON listing of the schedule for golden-file tests.
std::string schedule_json(const Workload& w, int threads_per_block);

// Walks the pattern's schedule and returns the computed values in element
// order. input.size() must equal total_elements(); throws otherwise.
std::vector<float> emulate(const Workload& w, const std::vector<float>& input);

}  // namespace tilesim
