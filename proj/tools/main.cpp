#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"tilesim - throughput-processor memory pipeline simulator and "
                 "analysis toolkit"};
    app.require_subcommand(1);

    tilesim::cli::SpecsOptions specs_opt;
    auto* specs = app.add_subcommand("specs", "Derived metrics of the GPU spec database");
    specs->add_option("--specs", specs_opt.specs, "Spec CSV path or 'builtin'");
    specs->add_option("--metric", specs_opt.metric, "bf | density | speedup")
        ->check(CLI::IsMember({"bf", "density", "speedup"}));
    specs->add_option("--precision", specs_opt.precision, "fp32 | fp64")
        ->check(CLI::IsMember({"fp32", "fp64"}));
    specs->add_option("--from", specs_opt.from_device, "Source device (speedup)");
    specs->add_option("--to", specs_opt.to_device, "Target device (speedup)");
    specs->add_option("--format", specs_opt.format, "table | csv")
        ->check(CLI::IsMember({"table", "csv"}));

    tilesim::cli::RooflineOptions roof_opt;
    auto* roofline =
        app.add_subcommand("roofline", "Roofline curve with optional overlaid points");
    roofline->add_option("--machine", roof_opt.machine,
                         "Profile file, 'a100-like' or 'v100-like'");
    roofline->add_option("--points", roof_opt.points_path,
                         "Sweep CSV or roofline CSV to overlay");
    roofline->add_option("--out", roof_opt.out_path, "Output file (.svg or .csv)")
        ->required();
    roofline->add_option("--ai-min", roof_opt.ai_min, "Left edge of the AI axis");
    roofline->add_option("--ai-max", roof_opt.ai_max, "Right edge (0 = auto)");
    roofline->add_option("--samples", roof_opt.samples, "Roof samples");

    tilesim::cli::SimulateOptions sim_opt;
    auto* simulate = app.add_subcommand("simulate", "Run one workload on the simulator");
    simulate->add_option("--machine", sim_opt.machine, "Machine profile");
    simulate->add_option("--pattern", sim_opt.pattern,
                         "sync | register_bypass | overlap | drop_off");
    simulate->add_option("--wait", sim_opt.wait, "barrier | pipeline")
        ->check(CLI::IsMember({"barrier", "pipeline"}));
    simulate->add_option("--tiles", sim_opt.tiles, "Tiles per block");
    simulate->add_option("--tile-elems", sim_opt.tile_elems, "fp32 elements per tile");
    simulate->add_option("--iterations", sim_opt.iterations, "Compute iterations");
    simulate->add_option("--inflight", sim_opt.inflight, "Overlap prefetch depth");
    simulate->add_option("--blocks", sim_opt.blocks, "Grid blocks");
    simulate->add_option("--threads", sim_opt.threads, "Threads per block");
    simulate->add_flag("--starved", sim_opt.starved, "Force 1 block per SM");
    simulate->add_option("--repeats", sim_opt.repeats, "Recorded repeats");
    simulate->add_option("--warmup", sim_opt.warmup, "Discarded warm-up runs");
    simulate->add_option("--format", sim_opt.format, "table | csv")
        ->check(CLI::IsMember({"table", "csv"}));

    tilesim::cli::SweepOptions sweep_opt;
    auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep from a JSON config");
    sweep->add_option("--sweep", sweep_opt.sweep_path, "Sweep config JSON")->required();
    sweep->add_option("--machine", sweep_opt.machine, "Machine profile");
    sweep->add_option("--out", sweep_opt.out_path, "Output CSV (default stdout)");

    tilesim::cli::CompareOptions cmp_opt;
    auto* compare =
        app.add_subcommand("compare", "Aggregate benchmark timing results");
    compare->add_option("--results", cmp_opt.results_path, "Results CSV")->required();
    compare->add_option("--order", cmp_opt.order,
                        "Comma-separated device ordering for generation summary");
    compare->add_flag("--baseline-variant", cmp_opt.baseline_variant,
                      "Compare variants against the baseline variant");
    compare->add_option("--device", cmp_opt.device, "Device filter (baseline mode)");
    compare->add_option("--benchmark", cmp_opt.benchmark,
                        "Benchmark filter (baseline mode)");
    compare->add_flag("--geometric", cmp_opt.geometric, "Geometric mean across benchmarks");
    compare->add_option("--format", cmp_opt.format, "table | csv")
        ->check(CLI::IsMember({"table", "csv"}));

    CLI11_PARSE(app, argc, argv);

    if (specs->parsed())
        return tilesim::cli::cmd_specs(specs_opt, std::cout, std::cerr);
    if (roofline->parsed()) return tilesim::cli::cmd_roofline(roof_opt, std::cerr);
    if (simulate->parsed())
        return tilesim::cli::cmd_simulate(sim_opt, std::cout, std::cerr);
    if (sweep->parsed()) return tilesim::cli::cmd_sweep(sweep_opt, std::cout, std::cerr);
    if (compare->parsed())
        return tilesim::cli::cmd_compare(cmp_opt, std::cout, std::cerr);
    return 1;
}
