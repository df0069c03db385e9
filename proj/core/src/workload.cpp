#include "tilesim/workload.hpp"

#include <stdexcept>

#include "json.hpp"

namespace tilesim {

const char* to_string(PatternKind p) {
    switch (p) {
        case PatternKind::SyncBaseline: return "sync";
        case PatternKind::RegisterBypass: return "register_bypass";
        case PatternKind::Overlap: return "overlap";
        case PatternKind::DropOff: return "drop_off";
    }
    return "?";
}

const char* to_string(WaitKind w) {
    return w == WaitKind::Barrier ? "barrier" : "pipeline";
}

PatternKind pattern_from_string(const std::string& s) {
    if (s == "sync" || s == "sync_baseline") return PatternKind::SyncBaseline;
    if (s == "register_bypass" || s == "register-bypass")
        return PatternKind::RegisterBypass;
    if (s == "overlap") return PatternKind::Overlap;
    if (s == "drop_off" || s == "drop-off") return PatternKind::DropOff;
    throw std::invalid_argument("unknown pattern: " + s);
}

WaitKind wait_from_string(const std::string& s) {
    if (s == "barrier") return WaitKind::Barrier;
    if (s == "pipeline") return WaitKind::Pipeline;
    throw std::invalid_argument("unknown wait kind: " + s);
}

bool pattern_has_wait_kind(PatternKind p) {
    return p == PatternKind::RegisterBypass || p == PatternKind::Overlap;
}

const char* to_string(Step::Kind k) {
    switch (k) {
        case Step::Kind::SyncLoad: return "sync_load";
        case Step::Kind::AsyncCopy: return "async_copy";
        case Step::Kind::WaitCopy: return "wait_copy";
        case Step::Kind::BlockSync: return "block_sync";
        case Step::Kind::Compute: return "compute";
    }
    return "?";
}

std::uint64_t Workload::shared_bytes(int threads_per_block) const {
    if (pattern == PatternKind::DropOff)
        return static_cast<std::uint64_t>(threads_per_block) * kBytesPerElement;
    return shared_buffers * tile_elements * kBytesPerElement;
}

Workload build_sync_baseline(std::uint64_t n_tiles, std::uint64_t tile_elements,
                             std::uint64_t iterations) {
    if (n_tiles == 0 || tile_elements == 0)
        throw std::invalid_argument("sync baseline needs n_tiles > 0, tile_elements > 0");
    Workload w;
    w.pattern = PatternKind::SyncBaseline;
    w.n_tiles = n_tiles;
    w.tile_elements = tile_elements;
    w.iterations = iterations;
    w.shared_buffers = 1;
    return w;
}

Workload build_register_bypass(std::uint64_t n_tiles, std::uint64_t tile_elements,
                               std::uint64_t iterations, WaitKind wait) {
    Workload w = build_sync_baseline(n_tiles, tile_elements, iterations);
    w.pattern = PatternKind::RegisterBypass;
    w.wait_kind = wait;
    return w;
}

Workload build_overlap(std::uint64_t n_tiles, std::uint64_t tile_elements,
                       std::uint64_t iterations, std::uint64_t k, WaitKind wait) {
    if (n_tiles == 0 || tile_elements == 0)
        throw std::invalid_argument("overlap needs n_tiles > 0, tile_elements > 0");
    if (k < 2 || k > n_tiles)
        throw std::invalid_argument("overlap needs 2 <= k <= n_tiles (k=" +
                                    std::to_string(k) + ", n_tiles=" +
                                    std::to_string(n_tiles) + ")");
    Workload w;
    w.pattern = PatternKind::Overlap;
    w.n_tiles = n_tiles;
    w.tile_elements = tile_elements;
    w.iterations = iterations;
    w.inflight_k = k;
    w.shared_buffers = k;
    w.wait_kind = wait;
    return w;
}

Workload build_drop_off(std::uint64_t n_elements, std::uint64_t iterations) {
    if (n_elements == 0) throw std::invalid_argument("drop off needs n_elements > 0");
    Workload w;
    w.pattern = PatternKind::DropOff;
    w.n_tiles = n_elements;
    w.tile_elements = 1;
    w.iterations = iterations;
    w.shared_buffers = 1;
    w.wait_kind = WaitKind::Pipeline;  // waits are per thread, always
    return w;
}

std::vector<Step> compile_schedule(const Workload& w, int threads_per_block) {
    if (threads_per_block <= 0)
        throw std::invalid_argument("threads_per_block must be positive");
    std::vector<Step> steps;
    const auto tile = static_cast<std::uint64_t>(w.tile_elements);
    switch (w.pattern) {
        case PatternKind::SyncBaseline:
            for (std::uint32_t i = 1; i <= w.n_tiles; ++i) {
                steps.push_back({Step::Kind::SyncLoad, i, 0, tile});
                steps.push_back({Step::Kind::BlockSync, i, 0, 0});
                steps.push_back({Step::Kind::Compute, i, 0, tile});
            }
            break;
        case PatternKind::RegisterBypass:
            for (std::uint32_t i = 1; i <= w.n_tiles; ++i) {
                steps.push_back({Step::Kind::AsyncCopy, i, 0, tile});
                steps.push_back({Step::Kind::WaitCopy, i, 0, 0});
                steps.push_back({Step::Kind::BlockSync, i, 0, 0});
                steps.push_back({Step::Kind::Compute, i, 0, tile});
            }
            break;
        case PatternKind::Overlap: {
            const std::uint64_t k = w.inflight_k;
            for (std::uint64_t j = 1; j <= k; ++j)
                steps.push_back({Step::Kind::AsyncCopy, static_cast<std::uint32_t>(j),
                                 static_cast<std::uint32_t>((j - 1) % k), tile});
            for (std::uint64_t i = 1; i <= w.n_tiles; ++i) {
                const auto buf = static_cast<std::uint32_t>((i - 1) % k);
                steps.push_back(
                    {Step::Kind::WaitCopy, static_cast<std::uint32_t>(i), buf, 0});
                steps.push_back(
                    {Step::Kind::BlockSync, static_cast<std::uint32_t>(i), 0, 0});
                steps.push_back(
                    {Step::Kind::Compute, static_cast<std::uint32_t>(i), buf, tile});
                // The next transfer starts only after its buffer's tile is
                // consumed; tile i+k reuses the buffer tile i just left.
                if (i + k <= w.n_tiles)
                    steps.push_back({Step::Kind::AsyncCopy,
                                     static_cast<std::uint32_t>(i + k),
                                     static_cast<std::uint32_t>((i + k - 1) % k), tile});
            }
            break;
        }
        case PatternKind::DropOff: {
            const std::uint64_t n = w.n_tiles;  // elements, one per thread per round
            const auto round_of = [&](std::uint64_t r) {
                std::uint64_t begin = r * threads_per_block;
                std::uint64_t end =
                    std::min<std::uint64_t>(begin + threads_per_block, n);
                return end - begin;
            };
            const std::uint64_t rounds =
                (n + threads_per_block - 1) / static_cast<std::uint64_t>(threads_per_block);
            steps.push_back({Step::Kind::AsyncCopy, 1, 0, round_of(0)});
            for (std::uint64_t r = 1; r <= rounds; ++r) {
                steps.push_back(
                    {Step::Kind::WaitCopy, static_cast<std::uint32_t>(r), 0, 0});
                if (r < rounds)
                    steps.push_back({Step::Kind::AsyncCopy,
                                     static_cast<std::uint32_t>(r + 1), 0, round_of(r)});
                steps.push_back({Step::Kind::Compute, static_cast<std::uint32_t>(r), 0,
                                 round_of(r - 1)});
            }
            break;
        }
    }
    for (const auto& s : steps)
        if (s.buffer >= w.shared_buffers)
            throw std::logic_error("schedule references buffer " +
                                   std::to_string(s.buffer) + " beyond the declared " +
                                   std::to_string(w.shared_buffers) + " buffers");
    return steps;
}

void check_buffer_safety(const Workload& w, const std::vector<Step>& steps) {
    // Track, per buffer, the tile it holds and whether that tile was consumed.
    // In DropOff the consumption point is the wait (the value moves to a
    // register immediately after), elsewhere it is the compute step.
    struct BufState {
        std::uint32_t tile = 0;
        bool consumed = true;
    };
    std::vector<BufState> bufs(w.shared_buffers);
    const bool register_consume = w.pattern == PatternKind::DropOff;
    for (size_t i = 0; i < steps.size(); ++i) {
        const Step& s = steps[i];
        switch (s.kind) {
            case Step::Kind::SyncLoad:
            case Step::Kind::AsyncCopy: {
                BufState& b = bufs.at(s.buffer);
                if (b.tile != 0 && !b.consumed)
                    throw std::logic_error(
                        "step " + std::to_string(i) + ": copy of tile " +
                        std::to_string(s.tile) + " overwrites unconsumed tile " +
                        std::to_string(b.tile) + " in buffer " +
                        std::to_string(s.buffer));
                b.tile = s.tile;
                b.consumed = false;
                break;
            }
            case Step::Kind::WaitCopy:
                if (register_consume)
                    for (auto& b : bufs)
                        if (b.tile == s.tile) b.consumed = true;
                break;
            case Step::Kind::Compute:
                if (!register_consume) bufs.at(s.buffer).consumed = true;
                break;
            case Step::Kind::BlockSync:
                break;
        }
    }
}

std::string schedule_json(const Workload& w, int threads_per_block) {
    nlohmann::json j;
    j["pattern"] = to_string(w.pattern);
    j["n_tiles"] = w.n_tiles;
    j["tile_elements"] = w.tile_elements;
    j["iterations"] = w.iterations;
    j["shared_buffers"] = w.shared_buffers;
    if (pattern_has_wait_kind(w.pattern)) j["wait"] = to_string(w.wait_kind);
    if (w.pattern == PatternKind::Overlap) j["inflight_k"] = w.inflight_k;
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : compile_schedule(w, threads_per_block)) {
        nlohmann::json js;
        js["step"] = to_string(s.kind);
        js["tile"] = s.tile;
        if (s.kind != Step::Kind::BlockSync && s.kind != Step::Kind::WaitCopy)
            js["buffer"] = s.buffer;
        if (s.elements > 0) js["elements"] = s.elements;
        steps.push_back(js);
    }
    j["steps"] = steps;
    return j.dump(2) + "\n";
}

std::vector<float> emulate(const Workload& w, const std::vector<float>& input) {
    if (input.size() != w.total_elements())
        throw std::invalid_argument("emulate: input length " +
                                    std::to_string(input.size()) + " != expected " +
                                    std::to_string(w.total_elements()));
    // Walk the compiled schedule with real buffer contents; the nominal block
    // width only shapes DropOff rounds and does not change any value.
    const int threads = w.pattern == PatternKind::DropOff ? 32 : 1;
    auto steps = compile_schedule(w, threads);
    check_buffer_safety(w, steps);

    const std::uint64_t chunk =
        w.pattern == PatternKind::DropOff ? static_cast<std::uint64_t>(threads)
                                          : w.tile_elements;
    // DropOff consumes the buffer at the wait: each thread moves its element
    // to a register before the next copy overwrites the staging slot.
    const bool register_consume = w.pattern == PatternKind::DropOff;
    std::vector<std::vector<float>> bufs(w.shared_buffers);
    std::vector<float> regs;
    std::vector<float> out(input.size());
    for (const auto& s : steps) {
        const std::uint64_t begin = (s.tile - 1ull) * chunk;
        switch (s.kind) {
            case Step::Kind::SyncLoad:
            case Step::Kind::AsyncCopy:
                bufs.at(s.buffer).assign(input.begin() + begin,
                                         input.begin() + begin + s.elements);
                break;
            case Step::Kind::WaitCopy:
                if (register_consume) regs = bufs.at(s.buffer);
                break;
            case Step::Kind::Compute: {
                auto& b = register_consume ? regs : bufs.at(s.buffer);
                for (std::uint64_t e = 0; e < s.elements; ++e) {
                    float v = b[e];
                    for (std::uint64_t it = 0; it < w.iterations; ++it)
                        v = 0.5f * v + 0.5f;
                    out[begin + e] = v;
                }
                break;
            }
            case Step::Kind::BlockSync:
                break;
        }
    }
    return out;
}

}  // namespace tilesim
