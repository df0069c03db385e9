#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace tilesim {

// One (device, benchmark, variant, input) observation with its repeats.
struct BenchmarkRecord {
    std::string device;
    std::string benchmark;
    std::string variant;      // "baseline", "register_bypass", ...
    std::string input_label;
    std::vector<double> times;  // seconds, all positive
};

// CSV with header `device,benchmark,variant,input,time_s`, one row per
// repeat; consecutive rows with the same key merge into one record. A key
// reappearing after a different key is a duplicate and rejected. Malformed
// rows and nonpositive times are rejected with the line number.
std::vector<BenchmarkRecord> load_results(std::istream& in);
std::vector<BenchmarkRecord> load_results_file(const std::string& path);

double median(std::vector<double> values);

// Per common benchmark: median(times on from_device) / median(times on
// to_device), pooled over variants and inputs. Throws when the devices share
// no benchmark.
std::map<std::string, double> device_speedup(const std::vector<BenchmarkRecord>& records,
                                             const std::string& from_device,
                                             const std::string& to_device);

struct DevicePairSummary {
    std::string from_device;
    std::string to_device;
    std::map<std::string, double> per_benchmark;
    double mean = 0.0;    // arithmetic by default, geometric on request
    double stddev = 0.0;  // sample (n-1)
};

struct SpeedupSummary {
    std::vector<DevicePairSummary> pairs;
};

SpeedupSummary generation_summary(const std::vector<BenchmarkRecord>& records,
                                  const std::vector<std::string>& ordering,
                                  bool geometric_mean = false);

// For every non-baseline variant of (device, benchmark), grouped by input
// label: median(baseline times) / median(variant times).
// Result: input_label -> variant -> ratio. Throws when no baseline exists.
std::map<std::string, std::map<std::string, double>> strategy_comparison(
    const std::vector<BenchmarkRecord>& records, const std::string& device,
    const std::string& benchmark);

void write_summary_csv(std::ostream& out, const SpeedupSummary& summary);
void write_summary_table(std::ostream& out, const SpeedupSummary& summary);
void write_comparison_csv(std::ostream& out, const std::string& device,
                          const std::string& benchmark,
                          const std::map<std::string, std::map<std::string, double>>& cmp);
void write_comparison_table(std::ostream& out, const std::string& device,
                            const std::string& benchmark,
                            const std::map<std::string, std::map<std::string, double>>& cmp);

}  // namespace tilesim
