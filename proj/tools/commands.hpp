#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace tilesim::cli {

struct SpecsOptions {
    std::string specs = "builtin";  // or a CSV path
    std::string metric = "bf";      // bf | density | speedup
    std::string precision = "fp32";
    std::string from_device;        // speedup only
    std::string to_device;
    std::string format = "table";   // table | csv
};
int cmd_specs(const SpecsOptions& opt, std::ostream& out, std::ostream& err);

struct RooflineOptions {
    std::string machine = "a100-like";
    std::string points_path;  // optional sweep or roofline CSV
    std::string out_path;     // .svg -> SVG, otherwise CSV
    double ai_min = 0.01;
    double ai_max = 0.0;      // 0 = auto (4x ridge, widened to cover points)
    int samples = 64;
};
int cmd_roofline(const RooflineOptions& opt, std::ostream& err);

struct SimulateOptions {
    std::string machine = "a100-like";
    std::string pattern = "sync";
    std::string wait = "pipeline";
    std::uint64_t tiles = 1;
    std::uint64_t tile_elems = 1024;
    std::uint64_t iterations = 1;
    std::uint64_t inflight = 2;
    int blocks = 1;
    int threads = 256;
    bool starved = false;
    int repeats = 1;
    int warmup = 0;
    std::string format = "table";
};
int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err);

struct SweepOptions {
    std::string sweep_path;
    std::string machine = "a100-like";
    std::string out_path;  // empty = stdout
};
int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err);

struct CompareOptions {
    std::string results_path;
    std::string order;             // comma-separated device list
    bool baseline_variant = false; // strategy-vs-baseline mode
    std::string device;            // optional filter for baseline mode
    std::string benchmark;
    bool geometric = false;
    std::string format = "table";
};
int cmd_compare(const CompareOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace tilesim::cli
