#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "tilesim/bench_ingest.hpp"
#include "tilesim/machine.hpp"
#include "tilesim/machine_model.hpp"
#include "tilesim/roofline.hpp"
#include "tilesim/simulator.hpp"
#include "tilesim/svg_plot.hpp"
#include "tilesim/sweep.hpp"

namespace tilesim::cli {

namespace {

std::string fmt(double v, int precision = 6) {
    std::ostringstream ss;
    ss << std::setprecision(precision) << v;
    return ss.str();
}

std::vector<GpuSpec> resolve_specs(const std::string& source) {
    if (source == "builtin") return builtin_specs();
    return load_specs_file(source);
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

int cmd_specs(const SpecsOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        auto specs = resolve_specs(opt.specs);
        Precision p = precision_from_string(opt.precision);
        std::sort(specs.begin(), specs.end(), [](const GpuSpec& a, const GpuSpec& b) {
            return std::tie(a.year, a.name) < std::tie(b.year, b.name);
        });

        if (opt.metric == "speedup") {
            if (opt.from_device.empty() || opt.to_device.empty()) {
                err << "specs: --metric speedup needs --from and --to\n";
                return 1;
            }
            const auto& from = find_spec(specs, opt.from_device);
            const auto& to = find_spec(specs, opt.to_device);
            auto s = expected_speedup(from, to, p);
            if (opt.format == "csv") {
                out << "from,to,precision,flop_ratio,bw_ratio,t_speedup\n"
                    << from.name << ',' << to.name << ',' << to_string(p) << ','
                    << fmt(s.flop_ratio) << ',' << fmt(s.bw_ratio) << ','
                    << fmt(s.t_speedup) << "\n";
            } else {
                out << from.name << " -> " << to.name << " (" << to_string(p) << ")\n"
                    << "  flop_ratio  " << fmt(s.flop_ratio) << "\n"
                    << "  bw_ratio    " << fmt(s.bw_ratio) << "\n"
                    << "  t_speedup   " << fmt(s.t_speedup) << "\n";
            }
            return 0;
        }

        if (opt.metric != "bf" && opt.metric != "density") {
            err << "specs: unknown metric '" << opt.metric << "'\n";
            return 1;
        }
        const char* unit = opt.metric == "bf" ? "byte_per_flop" : "gflops_per_mm2";
        if (opt.format == "csv") {
            out << "name,year,arch,grade,precision," << unit << "\n";
            for (const auto& s : specs) {
                double v = opt.metric == "bf" ? byte_per_flop(s, p) : compute_density(s, p);
                out << s.name << ',' << s.year << ',' << s.architecture << ','
                    << to_string(s.grade) << ',' << to_string(p) << ',' << fmt(v) << "\n";
            }
        } else {
            std::size_t width = 0;
            for (const auto& s : specs) width = std::max(width, s.name.size());
            out << std::left << std::setw(static_cast<int>(width) + 2) << "device"
                << std::setw(10) << "year" << unit << " (" << to_string(p) << ")\n";
            for (const auto& s : specs) {
                double v = opt.metric == "bf" ? byte_per_flop(s, p) : compute_density(s, p);
                out << std::left << std::setw(static_cast<int>(width) + 2) << s.name
                    << std::setw(10) << s.year << fmt(v) << "\n";
            }
        }
        return 0;
    } catch (const std::exception& e) {
        err << "specs: " << e.what() << "\n";
        return 1;
    }
}

int cmd_roofline(const RooflineOptions& opt, std::ostream& err) {
    try {
        MachineParams machine = load_machine(opt.machine);
        Roofline roof = machine.roofline();
        std::vector<RooflinePoint> points;
        if (!opt.points_path.empty()) {
            std::ifstream in(opt.points_path);
            if (!in) throw std::runtime_error("cannot open points file: " + opt.points_path);
            points = read_points_csv(in);
        }
        double ai_max = opt.ai_max;
        if (ai_max <= 0.0) {
            ai_max = 4.0 * ridge_point(roof);
            for (const auto& p : points) ai_max = std::max(ai_max, p.ai * 2.0);
        }
        std::ofstream outf(opt.out_path, std::ios::binary);
        if (!outf) throw std::runtime_error("cannot write output: " + opt.out_path);
        if (ends_with(opt.out_path, ".svg"))
            write_roofline_svg(outf, roof, points, opt.ai_min, ai_max);
        else
            write_roofline_csv(outf, roof, points, opt.ai_min, ai_max, opt.samples);
        return 0;
    } catch (const std::exception& e) {
        err << "roofline: " << e.what() << "\n";
        return 1;
    }
}

int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        MachineParams machine = load_machine(opt.machine);
        PatternKind pattern = pattern_from_string(opt.pattern);
        WaitKind wait = wait_from_string(opt.wait);
        Workload w;
        switch (pattern) {
            case PatternKind::SyncBaseline:
                w = build_sync_baseline(opt.tiles, opt.tile_elems, opt.iterations);
                break;
            case PatternKind::RegisterBypass:
                w = build_register_bypass(opt.tiles, opt.tile_elems, opt.iterations, wait);
                break;
            case PatternKind::Overlap:
                w = build_overlap(opt.tiles, opt.tile_elems, opt.iterations,
                                  opt.inflight, wait);
                break;
            case PatternKind::DropOff:
                w = build_drop_off(opt.tiles * opt.tile_elems, opt.iterations);
                break;
        }
        GridConfig grid{opt.blocks, opt.threads,
                        opt.starved ? machine.shared_mem_per_sm : 0};
        auto rr = run_repeated(w, machine, grid, opt.repeats, opt.warmup);
        const SimResult& r = rr.runs.front();
        if (opt.format == "csv") {
            out << "elapsed_cycles,bytes_moved,flops,gflops,gbs,blocks_per_sm,"
                   "mean_elapsed,stddev_elapsed\n";
            out << r.elapsed << ',' << r.bytes_moved << ',' << r.flops << ','
                << fmt(r.achieved_gflops) << ',' << fmt(r.achieved_bw_gbs) << ','
                << r.blocks_resident_per_sm << ',' << fmt(rr.summary.mean_elapsed) << ','
                << fmt(rr.summary.stddev_elapsed) << "\n";
        } else {
            out << "elapsed          " << r.elapsed << " cycles\n"
                << "bytes moved      " << r.bytes_moved << "\n"
                << "flops            " << r.flops << "\n"
                << "achieved         " << fmt(r.achieved_gflops) << " GFLOP/s, "
                << fmt(r.achieved_bw_gbs) << " GB/s\n"
                << "blocks per SM    " << r.blocks_resident_per_sm << "\n"
                << "repeats          " << opt.repeats << " (mean "
                << fmt(rr.summary.mean_elapsed) << ", stddev "
                << fmt(rr.summary.stddev_elapsed) << ")\n";
        }
        return 0;
    } catch (const std::exception& e) {
        err << "simulate: " << e.what() << "\n";
        return 1;
    }
}

int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        SweepConfig config = load_sweep_file(opt.sweep_path);
        MachineParams machine = load_machine(opt.machine);
        auto rows = run_sweep(config, machine);
        apply_speedups(rows);
        if (opt.out_path.empty()) {
            write_sweep_csv(out, rows);
        } else {
            std::ofstream outf(opt.out_path, std::ios::binary);
            if (!outf) throw std::runtime_error("cannot write output: " + opt.out_path);
            write_sweep_csv(outf, rows);
        }
        return 0;
    } catch (const std::exception& e) {
        err << "sweep: " << e.what() << "\n";
        return 1;
    }
}

int cmd_compare(const CompareOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        auto records = load_results_file(opt.results_path);
        if (opt.baseline_variant) {
            // All (device, benchmark) groups unless filtered.
            std::set<std::pair<std::string, std::string>> groups;
            for (const auto& r : records) {
                if (!opt.device.empty() && r.device != opt.device) continue;
                if (!opt.benchmark.empty() && r.benchmark != opt.benchmark) continue;
                groups.insert({r.device, r.benchmark});
            }
            if (groups.empty()) throw std::runtime_error("no matching records");
            for (const auto& [device, benchmark] : groups) {
                auto cmp = strategy_comparison(records, device, benchmark);
                if (opt.format == "csv")
                    write_comparison_csv(out, device, benchmark, cmp);
                else
                    write_comparison_table(out, device, benchmark, cmp);
            }
            return 0;
        }
        if (opt.order.empty()) {
            err << "compare: need --order or --baseline-variant\n";
            return 1;
        }
        std::vector<std::string> ordering;
        std::stringstream ss(opt.order);
        std::string device;
        while (std::getline(ss, device, ',')) ordering.push_back(device);
        auto summary = generation_summary(records, ordering, opt.geometric);
        if (opt.format == "csv")
            write_summary_csv(out, summary);
        else
            write_summary_table(out, summary);
        return 0;
    } catch (const std::exception& e) {
        err << "compare: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace tilesim::cli
