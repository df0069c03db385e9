#include "tilesim/machine.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace tilesim {

void MachineParams::validate() const {
    auto positive = [](double v, const char* field) {
        if (!(v > 0.0))
            throw std::invalid_argument(std::string("machine: ") + field +
                                        " must be strictly positive");
    };
    positive(clock_ghz, "clock_ghz");
    positive(static_cast<double>(sm_count), "sm_count");
    positive(static_cast<double>(max_warps_per_sm), "max_warps_per_sm");
    positive(static_cast<double>(max_blocks_per_sm), "max_blocks_per_sm");
    positive(static_cast<double>(shared_mem_per_sm), "shared_mem_per_sm");
    positive(static_cast<double>(global_latency), "global_latency");
    positive(global_bandwidth, "global_bandwidth");
    positive(static_cast<double>(async_channels_per_sm), "async_channels_per_sm");
    positive(static_cast<double>(async_issue_cost), "async_issue_cost");
    positive(static_cast<double>(sync_issue_cost), "sync_issue_cost");
    positive(static_cast<double>(flops_per_cycle_per_warp), "flops_per_cycle_per_warp");
    positive(static_cast<double>(warp_width), "warp_width");
    if (async_issue_cost > global_latency)
        throw std::invalid_argument("machine: async_issue_cost exceeds global_latency");
}

MachineParams a100_like() {
    MachineParams m;
    m.clock_ghz = 1.41;
    m.sm_count = 108;
    m.max_warps_per_sm = 64;
    m.max_blocks_per_sm = 32;
    m.shared_mem_per_sm = 164ull * 1024;
    m.global_latency = 400;
    m.global_bandwidth = 1555.0 / 1.41;  // so bandwidth * clock = 1555 GB/s
    m.async_channels_per_sm = 4;
    m.async_issue_cost = 1;
    m.sync_issue_cost = 4;
    m.flops_per_cycle_per_warp = 2;  // 64 warps * 2 = 128 flops/cycle/SM
    m.warp_width = 32;
    return m;
}

MachineParams v100_like() {
    MachineParams m;
    m.clock_ghz = 1.38;
    m.sm_count = 80;
    m.max_warps_per_sm = 64;
    m.max_blocks_per_sm = 32;
    m.shared_mem_per_sm = 96ull * 1024;
    m.global_latency = 440;
    m.global_bandwidth = 897.0 / 1.38;
    m.async_channels_per_sm = 4;
    m.async_issue_cost = 1;
    m.sync_issue_cost = 4;
    m.flops_per_cycle_per_warp = 2;
    m.warp_width = 32;
    return m;
}

namespace {

MachineParams machine_from_json(const nlohmann::json& j) {
    MachineParams m;
    m.clock_ghz = j.at("clock_ghz").get<double>();
    m.sm_count = j.at("sm_count").get<int>();
    m.max_warps_per_sm = j.at("max_warps_per_sm").get<int>();
    m.max_blocks_per_sm = j.at("max_blocks_per_sm").get<int>();
    m.shared_mem_per_sm = j.at("shared_mem_per_sm").get<std::uint64_t>();
    m.global_latency = j.at("global_latency").get<std::uint64_t>();
    m.global_bandwidth = j.at("global_bandwidth").get<double>();
    m.async_channels_per_sm = j.at("async_channels_per_sm").get<int>();
    m.async_issue_cost = j.at("async_issue_cost").get<std::uint64_t>();
    m.sync_issue_cost = j.at("sync_issue_cost").get<std::uint64_t>();
    m.flops_per_cycle_per_warp = j.at("flops_per_cycle_per_warp").get<std::uint64_t>();
    m.warp_width = j.at("warp_width").get<int>();
    m.validate();
    return m;
}

}  // namespace

MachineParams machine_from_json_text(const std::string& text) {
    return machine_from_json(nlohmann::json::parse(text));
}

std::string machine_to_json_text(const MachineParams& m) {
    nlohmann::json j;
    j["clock_ghz"] = m.clock_ghz;
    j["sm_count"] = m.sm_count;
    j["max_warps_per_sm"] = m.max_warps_per_sm;
    j["max_blocks_per_sm"] = m.max_blocks_per_sm;
    j["shared_mem_per_sm"] = m.shared_mem_per_sm;
    j["global_latency"] = m.global_latency;
    j["global_bandwidth"] = m.global_bandwidth;
    j["async_channels_per_sm"] = m.async_channels_per_sm;
    j["async_issue_cost"] = m.async_issue_cost;
    j["sync_issue_cost"] = m.sync_issue_cost;
    j["flops_per_cycle_per_warp"] = m.flops_per_cycle_per_warp;
    j["warp_width"] = m.warp_width;
    return j.dump(2) + "\n";
}

MachineParams load_machine(const std::string& name_or_path) {
    if (name_or_path == "a100-like") return a100_like();
    if (name_or_path == "v100-like") return v100_like();
    std::ifstream in(name_or_path);
    if (!in) throw std::runtime_error("cannot open machine profile: " + name_or_path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return machine_from_json_text(ss.str());
}

int occupancy(const MachineParams& machine, std::uint64_t shared_per_block,
              int threads_per_block) {
    if (threads_per_block <= 0 || threads_per_block % machine.warp_width != 0)
        throw std::invalid_argument(
            "threads_per_block must be a positive multiple of the warp width");
    if (shared_per_block > machine.shared_mem_per_sm)
        throw UnschedulableError("block needs " + std::to_string(shared_per_block) +
                                 " bytes of shared memory, SM has " +
                                 std::to_string(machine.shared_mem_per_sm));
    std::uint64_t by_warps =
        static_cast<std::uint64_t>(machine.max_warps_per_sm) * machine.warp_width /
        static_cast<std::uint64_t>(threads_per_block);
    if (by_warps == 0)
        throw UnschedulableError("block of " + std::to_string(threads_per_block) +
                                 " threads exceeds the SM warp capacity");
    std::uint64_t by_shared = shared_per_block == 0
                                  ? by_warps
                                  : machine.shared_mem_per_sm / shared_per_block;
    std::uint64_t r = std::min<std::uint64_t>(machine.max_blocks_per_sm,
                                              std::min(by_shared, by_warps));
    return static_cast<int>(r);
}

}  // namespace tilesim
