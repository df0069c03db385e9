#include "tilesim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <queue>
#include <unordered_map>
#include <vector>

namespace tilesim {

namespace {

// Ceiling of a nonnegative double to a cycle count.
std::uint64_t ceil_cycles(double t) {
    return static_cast<std::uint64_t>(std::ceil(t - 1e-9));
}

// Contiguous ceil-split of `total` elements among `parts` warps.
std::uint64_t slice_of(std::uint64_t total, int parts, int index) {
    std::uint64_t base = total / parts;
    std::uint64_t rem = total % parts;
    return base + (static_cast<std::uint64_t>(index) < rem ? 1 : 0);
}

struct Rendezvous {
    int arrived = 0;
    std::uint64_t max_time = 0;
    std::vector<int> waiting;  // global warp ids parked here
};

struct BlockState {
    int sm = -1;
    int warps_remaining = 0;
    std::unordered_map<std::uint64_t, Rendezvous> syncs;  // keyed by pc
    std::unordered_map<std::uint32_t, std::uint64_t> tile_complete;  // block-wide max
};

struct WarpState {
    int block = -1;
    int lane = -1;  // index within the block
    std::size_t pc = 0;
    std::uint64_t finish = 0;
    std::vector<std::pair<std::uint32_t, std::uint64_t>> pending;  // tile -> done
};

struct Event {
    std::uint64_t time;
    std::uint64_t seq;
    int warp;
};
struct EventLater {
    bool operator()(const Event& a, const Event& b) const {
        if (a.time != b.time) return a.time > b.time;
        if (a.warp != b.warp) return a.warp > b.warp;
        return a.seq > b.seq;
    }
};

}  // namespace

SimResult simulate(const Workload& workload, const MachineParams& machine,
                   const GridConfig& grid) {
    machine.validate();
    if (grid.blocks <= 0) throw std::invalid_argument("grid needs at least one block");
    const int threads = grid.threads_per_block;
    if (threads <= 0 || threads % machine.warp_width != 0)
        throw std::invalid_argument(
            "threads_per_block must be a positive multiple of the warp width");
    const int warps_per_block = threads / machine.warp_width;

    std::uint64_t shared_per_block = workload.shared_bytes(threads);
    if (grid.shared_override_bytes > 0) {
        if (grid.shared_override_bytes < shared_per_block)
            throw std::invalid_argument(
                "shared override is below the pattern's own footprint");
        shared_per_block = grid.shared_override_bytes;
    }
    const int resident = occupancy(machine, shared_per_block, threads);

    SimResult res;
    res.blocks_resident_per_sm = resident;
    if (workload.n_tiles == 0) return res;

    const auto steps = compile_schedule(workload, threads);
    check_buffer_safety(workload, steps);
    if (steps.empty()) return res;

    const int S = machine.sm_count;
    const double rate = machine.global_bandwidth;

    std::vector<std::uint64_t> port_free(S, 0);
    std::vector<int> sm_resident(S, 0);
    double pipe_free = 0.0;

    std::vector<BlockState> blocks(grid.blocks);
    std::vector<WarpState> warps(static_cast<std::size_t>(grid.blocks) * warps_per_block);
    std::deque<int> pending_blocks;

    std::priority_queue<Event, std::vector<Event>, EventLater> events;
    std::uint64_t seq = 0;

    auto launch_block = [&](int b, int sm, std::uint64_t t) {
        blocks[b].sm = sm;
        blocks[b].warps_remaining = warps_per_block;
        sm_resident[sm] += 1;
        for (int w = 0; w < warps_per_block; ++w) {
            int gid = b * warps_per_block + w;
            warps[gid].block = b;
            warps[gid].lane = w;
            events.push({t, seq++, gid});
        }
    };

    for (int b = 0; b < grid.blocks; ++b) {
        int sm = b % S;
        if (sm_resident[sm] < resident)
            launch_block(b, sm, 0);
        else
            pending_blocks.push_back(b);
    }

    std::uint64_t elapsed = 0;

    auto find_pending = [&](WarpState& w, std::uint32_t tile) {
        std::uint64_t done = 0;
        for (auto it = w.pending.begin(); it != w.pending.end(); ++it) {
            if (it->first == tile) {
                done = it->second;
                w.pending.erase(it);
                break;
            }
        }
        return done;
    };

    while (!events.empty()) {
        Event ev = events.top();
        events.pop();
        int gid = ev.warp;
        WarpState& w = warps[gid];
        BlockState& blk = blocks[w.block];
        const int sm = blk.sm;
        std::uint64_t t = ev.time;

        bool blocked = false;
        while (!blocked && w.pc < steps.size()) {
            const Step& s = steps[w.pc];
            switch (s.kind) {
                case Step::Kind::SyncLoad: {
                    std::uint64_t elems = slice_of(s.elements, warps_per_block, w.lane);
                    if (elems == 0) {
                        ++w.pc;
                        break;
                    }
                    std::uint64_t start = std::max(t, port_free[sm]);
                    port_free[sm] = start + machine.sync_issue_cost;
                    std::uint64_t issued = start + machine.sync_issue_cost;
                    double stream_start = std::max(
                        static_cast<double>(issued + machine.global_latency), pipe_free);
                    double end = stream_start +
                                 static_cast<double>(elems * kBytesPerElement) / rate;
                    pipe_free = end;
                    res.bytes_moved += elems * kBytesPerElement;
                    ++w.pc;
                    events.push({ceil_cycles(end), seq++, gid});
                    blocked = true;
                    break;
                }
                case Step::Kind::AsyncCopy: {
                    std::uint64_t elems = slice_of(s.elements, warps_per_block, w.lane);
                    if (elems == 0) {
                        w.pending.emplace_back(s.tile, t);
                        ++w.pc;
                        break;
                    }
                    std::uint64_t start = std::max(t, port_free[sm]);
                    port_free[sm] = start + machine.async_issue_cost;
                    std::uint64_t issued = start + machine.async_issue_cost;
                    // A DMA channel carries the copy; the warp is free after
                    // issue and the transfer joins the device-wide FCFS queue.
                    double stream_start = std::max(
                        static_cast<double>(issued + machine.global_latency), pipe_free);
                    double end = stream_start +
                                 static_cast<double>(elems * kBytesPerElement) / rate;
                    pipe_free = end;
                    std::uint64_t done = ceil_cycles(end);
                    w.pending.emplace_back(s.tile, done);
                    auto [it, inserted] = blk.tile_complete.try_emplace(s.tile, done);
                    if (!inserted) it->second = std::max(it->second, done);
                    res.bytes_moved += elems * kBytesPerElement;
                    ++w.pc;
                    if (issued > t) {
                        events.push({issued, seq++, gid});
                        blocked = true;
                    }
                    break;
                }
                case Step::Kind::WaitCopy: {
                    const bool barrier_wait =
                        pattern_has_wait_kind(workload.pattern) &&
                        workload.wait_kind == WaitKind::Barrier;
                    if (!barrier_wait) {
                        std::uint64_t done = find_pending(w, s.tile);
                        ++w.pc;
                        if (done > t) {
                            events.push({done, seq++, gid});
                            blocked = true;
                        }
                        break;
                    }
                    // Barrier-style wait: block-wide rendezvous gated on the
                    // tile's completion, with a barrier release cost.
                    find_pending(w, s.tile);
                    Rendezvous& r = blk.syncs[w.pc];
                    r.arrived += 1;
                    r.max_time = std::max(r.max_time, t);
                    if (r.arrived < warps_per_block) {
                        r.waiting.push_back(gid);
                        blocked = true;
                        break;
                    }
                    std::uint64_t tile_done = 0;
                    if (auto it = blk.tile_complete.find(s.tile);
                        it != blk.tile_complete.end())
                        tile_done = it->second;
                    std::uint64_t release =
                        std::max(r.max_time, tile_done) + machine.sync_issue_cost;
                    for (int other : r.waiting) {
                        warps[other].pc += 1;
                        events.push({release, seq++, other});
                    }
                    blk.syncs.erase(w.pc);
                    ++w.pc;
                    if (release > t) {
                        events.push({release, seq++, gid});
                        blocked = true;
                    }
                    break;
                }
                case Step::Kind::BlockSync: {
                    if (warps_per_block == 1) {
                        ++w.pc;
                        break;
                    }
                    Rendezvous& r = blk.syncs[w.pc];
                    r.arrived += 1;
                    r.max_time = std::max(r.max_time, t);
                    if (r.arrived < warps_per_block) {
                        r.waiting.push_back(gid);
                        blocked = true;
                        break;
                    }
                    // All warps resume one barrier-instruction issue after the
                    // last arrival.
                    std::uint64_t release = r.max_time + machine.sync_issue_cost;
                    for (int other : r.waiting) {
                        warps[other].pc += 1;
                        events.push({release, seq++, other});
                    }
                    blk.syncs.erase(w.pc);
                    ++w.pc;
                    if (release > t) {
                        events.push({release, seq++, gid});
                        blocked = true;
                    }
                    break;
                }
                case Step::Kind::Compute: {
                    std::uint64_t elems = slice_of(s.elements, warps_per_block, w.lane);
                    std::uint64_t flops = elems * workload.iterations * kFlopsPerIteration;
                    res.flops += flops;
                    if (flops == 0) {
                        ++w.pc;
                        break;
                    }
                    std::uint64_t dur = (flops + machine.flops_per_cycle_per_warp - 1) /
                                        machine.flops_per_cycle_per_warp;
                    ++w.pc;
                    events.push({t + dur, seq++, gid});
                    blocked = true;
                    break;
                }
            }
        }

        if (!blocked && w.pc >= steps.size() && w.finish == 0) {
            w.finish = std::max<std::uint64_t>(t, 1);
            elapsed = std::max(elapsed, t);
            blk.warps_remaining -= 1;
            if (blk.warps_remaining == 0) {
                sm_resident[sm] -= 1;
                if (!pending_blocks.empty()) {
                    int nb = pending_blocks.front();
                    pending_blocks.pop_front();
                    launch_block(nb, sm, t);
                }
            }
        }
    }

    res.elapsed = elapsed;
    if (elapsed > 0) {
        res.achieved_gflops =
            static_cast<double>(res.flops) * machine.clock_ghz / elapsed;
        res.achieved_bw_gbs =
            static_cast<double>(res.bytes_moved) * machine.clock_ghz / elapsed;
    }
    return res;
}

RepeatedRuns run_repeated(const Workload& workload, const MachineParams& machine,
                          const GridConfig& grid, int repeats, int warmup,
                          std::uint64_t /*seed*/) {
    if (repeats < 1) throw std::invalid_argument("repeats must be >= 1");
    for (int i = 0; i < warmup; ++i) (void)simulate(workload, machine, grid);
    RepeatedRuns out;
    out.runs.reserve(repeats);
    for (int i = 0; i < repeats; ++i) out.runs.push_back(simulate(workload, machine, grid));
    double mean = 0.0;
    for (const auto& r : out.runs) mean += static_cast<double>(r.elapsed);
    mean /= repeats;
    double var = 0.0;
    if (repeats > 1) {
        for (const auto& r : out.runs) {
            double d = static_cast<double>(r.elapsed) - mean;
            var += d * d;
        }
        var /= (repeats - 1);
    }
    out.summary = {mean, std::sqrt(var)};
    return out;
}

}  // namespace tilesim
