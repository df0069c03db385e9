#include "tilesim/bench_ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tilesim {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string key_string(const BenchmarkRecord& r) {
    return r.device + "/" + r.benchmark + "/" + r.variant + "/" + r.input_label;
}

constexpr const char* kResultsHeader = "device,benchmark,variant,input,time_s";

}  // namespace

std::vector<BenchmarkRecord> load_results(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("results file is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kResultsHeader)
        throw std::runtime_error("results file: unexpected header '" + line + "'");

    std::vector<BenchmarkRecord> records;
    std::set<std::string> seen;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto f = split_line(line);
        if (f.size() != 5)
            throw std::runtime_error("results file line " + std::to_string(line_no) +
                                     ": expected 5 fields, got " +
                                     std::to_string(f.size()));
        double time_s;
        try {
            time_s = std::stod(f[4]);
        } catch (const std::exception&) {
            throw std::runtime_error("results file line " + std::to_string(line_no) +
                                     ": bad time '" + f[4] + "'");
        }
        if (!(time_s > 0.0))
            throw std::runtime_error("results file line " + std::to_string(line_no) +
                                     ": time must be strictly positive");
        BenchmarkRecord rec{f[0], f[1], f[2], f[3], {time_s}};
        if (!records.empty() && key_string(records.back()) == key_string(rec)) {
            records.back().times.push_back(time_s);
            continue;
        }
        if (!seen.insert(key_string(rec)).second)
            throw std::runtime_error("results file line " + std::to_string(line_no) +
                                     ": duplicate key " + key_string(rec));
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<BenchmarkRecord> load_results_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open results file: " + path);
    return load_results(in);
}

double median(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("median of empty list");
    std::sort(values.begin(), values.end());
    std::size_t n = values.size();
    return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

namespace {

// Pooled repeats per (device, benchmark), across variants and inputs.
std::map<std::string, std::vector<double>> times_by_benchmark(
    const std::vector<BenchmarkRecord>& records, const std::string& device) {
    std::map<std::string, std::vector<double>> out;
    for (const auto& r : records)
        if (r.device == device)
            out[r.benchmark].insert(out[r.benchmark].end(), r.times.begin(),
                                    r.times.end());
    return out;
}

}  // namespace

std::map<std::string, double> device_speedup(const std::vector<BenchmarkRecord>& records,
                                             const std::string& from_device,
                                             const std::string& to_device) {
    auto from = times_by_benchmark(records, from_device);
    auto to = times_by_benchmark(records, to_device);
    if (from.empty())
        throw std::runtime_error("no records for device '" + from_device + "'");
    if (to.empty()) throw std::runtime_error("no records for device '" + to_device + "'");
    std::map<std::string, double> out;
    for (const auto& [bench, times] : from) {
        auto it = to.find(bench);
        if (it == to.end()) continue;
        out[bench] = median(times) / median(it->second);
    }
    if (out.empty())
        throw std::runtime_error("devices '" + from_device + "' and '" + to_device +
                                 "' share no benchmark");
    return out;
}

SpeedupSummary generation_summary(const std::vector<BenchmarkRecord>& records,
                                  const std::vector<std::string>& ordering,
                                  bool geometric_mean) {
    if (ordering.size() < 2)
        throw std::invalid_argument("generation summary needs at least two devices");
    SpeedupSummary summary;
    for (std::size_t i = 0; i + 1 < ordering.size(); ++i) {
        DevicePairSummary pair;
        pair.from_device = ordering[i];
        pair.to_device = ordering[i + 1];
        pair.per_benchmark = device_speedup(records, pair.from_device, pair.to_device);
        const std::size_t n = pair.per_benchmark.size();
        if (geometric_mean) {
            double log_sum = 0.0;
            for (const auto& [_, v] : pair.per_benchmark) log_sum += std::log(v);
            pair.mean = std::exp(log_sum / n);
        } else {
            double sum = 0.0;
            for (const auto& [_, v] : pair.per_benchmark) sum += v;
            pair.mean = sum / n;
        }
        double var = 0.0;
        if (n > 1) {
            double amean = 0.0;
            for (const auto& [_, v] : pair.per_benchmark) amean += v;
            amean /= n;
            for (const auto& [_, v] : pair.per_benchmark)
                var += (v - amean) * (v - amean);
            var /= (n - 1);
        }
        pair.stddev = std::sqrt(var);
        summary.pairs.push_back(std::move(pair));
    }
    return summary;
}

std::map<std::string, std::map<std::string, double>> strategy_comparison(
    const std::vector<BenchmarkRecord>& records, const std::string& device,
    const std::string& benchmark) {
    // input_label -> variant -> pooled times
    std::map<std::string, std::map<std::string, std::vector<double>>> cells;
    for (const auto& r : records)
        if (r.device == device && r.benchmark == benchmark) {
            auto& t = cells[r.input_label][r.variant];
            t.insert(t.end(), r.times.begin(), r.times.end());
        }
    if (cells.empty())
        throw std::runtime_error("no records for (" + device + ", " + benchmark + ")");
    std::map<std::string, std::map<std::string, double>> out;
    for (const auto& [input, variants] : cells) {
        auto base = variants.find("baseline");
        if (base == variants.end())
            throw std::runtime_error("no baseline variant for (" + device + ", " +
                                     benchmark + ", input=" + input + ")");
        double base_median = median(base->second);
        for (const auto& [variant, times] : variants) {
            if (variant == "baseline") continue;
            out[input][variant] = base_median / median(times);
        }
    }
    return out;
}

namespace {

std::string fmt(double v) {
    std::ostringstream ss;
    ss << std::setprecision(6) << v;
    return ss.str();
}

}  // namespace

void write_summary_csv(std::ostream& out, const SpeedupSummary& summary) {
    out << "from_device,to_device,benchmark,speedup,mean,stddev\n";
    for (const auto& p : summary.pairs)
        for (const auto& [bench, v] : p.per_benchmark)
            out << p.from_device << ',' << p.to_device << ',' << bench << ',' << fmt(v)
                << ',' << fmt(p.mean) << ',' << fmt(p.stddev) << "\n";
}

void write_summary_table(std::ostream& out, const SpeedupSummary& summary) {
    for (const auto& p : summary.pairs) {
        out << p.from_device << " -> " << p.to_device << "  (mean " << fmt(p.mean)
            << " +/- " << fmt(p.stddev) << ")\n";
        std::size_t width = 0;
        for (const auto& [bench, _] : p.per_benchmark)
            width = std::max(width, bench.size());
        for (const auto& [bench, v] : p.per_benchmark)
            out << "  " << std::left << std::setw(static_cast<int>(width) + 2) << bench
                << fmt(v) << "x\n";
    }
}

void write_comparison_csv(std::ostream& out, const std::string& device,
                          const std::string& benchmark,
                          const std::map<std::string, std::map<std::string, double>>& cmp) {
    out << "device,benchmark,input,variant,speedup_vs_baseline\n";
    for (const auto& [input, variants] : cmp)
        for (const auto& [variant, v] : variants)
            out << device << ',' << benchmark << ',' << input << ',' << variant << ','
                << fmt(v) << "\n";
}

void write_comparison_table(std::ostream& out, const std::string& device,
                            const std::string& benchmark,
                            const std::map<std::string, std::map<std::string, double>>& cmp) {
    out << device << " / " << benchmark << "\n";
    for (const auto& [input, variants] : cmp) {
        out << "  input " << input << "\n";
        std::size_t width = 0;
        for (const auto& [variant, _] : variants) width = std::max(width, variant.size());
        for (const auto& [variant, v] : variants)
            out << "    " << std::left << std::setw(static_cast<int>(width) + 2)
                << variant << fmt(v) << "x\n";
    }
}

}  // namespace tilesim
