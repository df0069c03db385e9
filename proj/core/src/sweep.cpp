#include "tilesim/sweep.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace tilesim {

const char* to_string(OccupancyMode m) {
    return m == OccupancyMode::Full ? "full" : "starved";
}

OccupancyMode occupancy_mode_from_string(const std::string& s) {
    if (s == "full") return OccupancyMode::Full;
    if (s == "starved") return OccupancyMode::Starved;
    throw std::invalid_argument("unknown occupancy mode: " + s);
}

void SweepConfig::validate() const {
    if (total_bytes == 0 || total_bytes % kBytesPerElement != 0)
        throw std::invalid_argument("total_bytes must be a positive multiple of 4");
    auto non_empty = [](bool ok, const char* name) {
        if (!ok)
            throw std::invalid_argument(std::string("sweep config: ") + name +
                                        " must be non-empty");
    };
    non_empty(!iterations_list.empty(), "iterations");
    non_empty(!tile_elements_list.empty(), "tile_elements");
    non_empty(!blocks_list.empty(), "blocks");
    non_empty(!threads_per_block_list.empty(), "threads_per_block");
    non_empty(!inflight_list.empty(), "inflight");
    non_empty(!patterns.empty(), "patterns");
    non_empty(!wait_kinds.empty(), "wait_kinds");
    if (repeats < 1) throw std::invalid_argument("sweep config: repeats must be >= 1");
    if (warmup < 0) throw std::invalid_argument("sweep config: warmup must be >= 0");
}

double arithmetic_intensity(std::uint64_t iterations) {
    // 2 flops per iteration per element; 8 bytes of traffic per fp32 element
    // (4 read + 4 written back).
    return static_cast<double>(iterations * kFlopsPerIteration) / 8.0;
}

SweepConfig starve_occupancy(const SweepConfig& config, const MachineParams& machine) {
    config.validate();
    machine.validate();
    SweepConfig out = config;
    out.occupancy_mode = OccupancyMode::Starved;
    return out;
}

namespace {

SweepConfig sweep_from_json(const nlohmann::json& j) {
    SweepConfig c;
    if (j.contains("total_bytes")) c.total_bytes = j.at("total_bytes").get<std::uint64_t>();
    c.iterations_list = j.at("iterations").get<std::vector<std::uint64_t>>();
    c.tile_elements_list = j.at("tile_elements").get<std::vector<std::uint64_t>>();
    c.blocks_list = j.at("blocks").get<std::vector<int>>();
    c.threads_per_block_list = j.at("threads_per_block").get<std::vector<int>>();
    c.inflight_list = j.at("inflight").get<std::vector<std::uint64_t>>();
    for (const auto& s : j.at("patterns").get<std::vector<std::string>>())
        c.patterns.push_back(pattern_from_string(s));
    for (const auto& s : j.at("wait_kinds").get<std::vector<std::string>>())
        c.wait_kinds.push_back(wait_from_string(s));
    if (j.contains("occupancy_mode"))
        c.occupancy_mode = occupancy_mode_from_string(j.at("occupancy_mode"));
    if (j.contains("repeats")) c.repeats = j.at("repeats").get<int>();
    if (j.contains("warmup")) c.warmup = j.at("warmup").get<int>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    c.validate();
    return c;
}

}  // namespace

SweepConfig sweep_from_json_text(const std::string& text) {
    return sweep_from_json(nlohmann::json::parse(text));
}

std::string sweep_to_json_text(const SweepConfig& c) {
    nlohmann::json j;
    j["total_bytes"] = c.total_bytes;
    j["iterations"] = c.iterations_list;
    j["tile_elements"] = c.tile_elements_list;
    j["blocks"] = c.blocks_list;
    j["threads_per_block"] = c.threads_per_block_list;
    j["inflight"] = c.inflight_list;
    std::vector<std::string> pats, waits;
    for (auto p : c.patterns) pats.emplace_back(to_string(p));
    for (auto w : c.wait_kinds) waits.emplace_back(to_string(w));
    j["patterns"] = pats;
    j["wait_kinds"] = waits;
    j["occupancy_mode"] = to_string(c.occupancy_mode);
    j["repeats"] = c.repeats;
    j["warmup"] = c.warmup;
    j["seed"] = c.seed;
    return j.dump(2) + "\n";
}

SweepConfig load_sweep_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sweep config: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return sweep_from_json_text(ss.str());
}

namespace {

Workload build_for_row(const SweepRow& row, std::uint64_t total_bytes) {
    const std::uint64_t total_elements = total_bytes / kBytesPerElement;
    const std::uint64_t per_block = total_elements / row.blocks;
    switch (row.pattern) {
        case PatternKind::DropOff: {
            if (per_block == 0) throw std::invalid_argument("no elements per block");
            return build_drop_off(per_block, row.iterations);
        }
        default: {
            std::uint64_t n_tiles = per_block / row.tile_elements;
            std::uint64_t min_tiles =
                row.pattern == PatternKind::Overlap ? row.inflight : 1;
            n_tiles = std::max<std::uint64_t>(n_tiles, min_tiles);
            switch (row.pattern) {
                case PatternKind::SyncBaseline:
                    return build_sync_baseline(n_tiles, row.tile_elements,
                                               row.iterations);
                case PatternKind::RegisterBypass:
                    return build_register_bypass(n_tiles, row.tile_elements,
                                                 row.iterations, row.wait);
                case PatternKind::Overlap:
                    return build_overlap(n_tiles, row.tile_elements, row.iterations,
                                         row.inflight, row.wait);
                default:
                    throw std::logic_error("unreachable");
            }
        }
    }
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& config, const MachineParams& machine) {
    config.validate();
    machine.validate();
    std::vector<SweepRow> rows;
    for (PatternKind pattern : config.patterns) {
        const bool has_wait = pattern_has_wait_kind(pattern);
        const std::size_t n_waits = has_wait ? config.wait_kinds.size() : 1;
        for (std::size_t wi = 0; wi < n_waits; ++wi) {
            for (std::uint64_t iterations : config.iterations_list)
                for (std::uint64_t tile : config.tile_elements_list)
                    for (int blocks : config.blocks_list)
                        for (int threads : config.threads_per_block_list)
                            for (std::uint64_t inflight : config.inflight_list) {
                                SweepRow row;
                                row.pattern = pattern;
                                row.has_wait = has_wait;
                                if (has_wait) row.wait = config.wait_kinds[wi];
                                row.iterations = iterations;
                                row.ai = arithmetic_intensity(iterations);
                                row.tile_elements = tile;
                                row.blocks = blocks;
                                row.threads = threads;
                                row.inflight = inflight;
                                row.occupancy = config.occupancy_mode;
                                try {
                                    Workload w = build_for_row(row, config.total_bytes);
                                    GridConfig grid{blocks, threads, 0};
                                    if (config.occupancy_mode == OccupancyMode::Starved)
                                        grid.shared_override_bytes =
                                            machine.shared_mem_per_sm;
                                    auto rr = run_repeated(w, machine, grid,
                                                           config.repeats, config.warmup,
                                                           config.seed);
                                    row.result = rr.runs.front();
                                } catch (const std::exception& e) {
                                    row.error = e.what();
                                }
                                rows.push_back(std::move(row));
                            }
        }
    }
    return rows;
}

namespace {

using CoordKey = std::tuple<std::uint64_t, std::uint64_t, int, int, std::uint64_t, int>;

CoordKey key_of(const SweepRow& r) {
    return {r.iterations, r.tile_elements, r.blocks, r.threads, r.inflight,
            static_cast<int>(r.occupancy)};
}

std::string coord_string(const SweepRow& r) {
    std::ostringstream ss;
    ss << "iterations=" << r.iterations << " tile_elems=" << r.tile_elements
       << " blocks=" << r.blocks << " threads=" << r.threads
       << " inflight=" << r.inflight << " occupancy=" << to_string(r.occupancy);
    return ss.str();
}

}  // namespace

void apply_speedups(std::vector<SweepRow>& rows) {
    std::map<CoordKey, std::uint64_t> baseline;
    for (const auto& r : rows)
        if (r.pattern == PatternKind::SyncBaseline && r.result)
            baseline[key_of(r)] = r.result->elapsed;
    for (auto& r : rows) {
        if (!r.result) continue;
        if (r.pattern == PatternKind::SyncBaseline) {
            r.speedup = 1.0;
            continue;
        }
        auto it = baseline.find(key_of(r));
        if (it == baseline.end())
            throw std::runtime_error("no SyncBaseline row for coordinate " +
                                     coord_string(r));
        r.speedup = r.result->elapsed == 0
                        ? 1.0
                        : static_cast<double>(it->second) / r.result->elapsed;
    }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "pattern,wait,iterations,ai,tile_elems,blocks,threads,inflight,occupancy,"
           "elapsed_cycles,gflops,gbs,speedup,error\n";
    auto fmt = [](double v) {
        std::ostringstream ss;
        ss << std::setprecision(12) << v;
        return ss.str();
    };
    for (const auto& r : rows) {
        out << to_string(r.pattern) << ',' << (r.has_wait ? to_string(r.wait) : "-")
            << ',' << r.iterations << ',' << fmt(r.ai) << ',' << r.tile_elements << ','
            << r.blocks << ',' << r.threads << ',' << r.inflight << ','
            << to_string(r.occupancy) << ',';
        if (r.result) {
            out << r.result->elapsed << ',' << fmt(r.result->achieved_gflops) << ','
                << fmt(r.result->achieved_bw_gbs) << ','
                << (r.speedup > 0.0 ? fmt(r.speedup) : "") << ',';
        } else {
            out << ",,,,";
        }
        out << r.error << "\n";
    }
}

}  // namespace tilesim
