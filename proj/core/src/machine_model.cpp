#include "tilesim/machine_model.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace tilesim {

const char* to_string(Precision p) {
    return p == Precision::Fp32 ? "fp32" : "fp64";
}

const char* to_string(GpuGrade g) {
    return g == GpuGrade::Tesla ? "tesla" : "consumer";
}

Precision precision_from_string(const std::string& s) {
    if (s == "fp32") return Precision::Fp32;
    if (s == "fp64") return Precision::Fp64;
    throw std::invalid_argument("unknown precision: " + s);
}

GpuGrade grade_from_string(const std::string& s) {
    if (s == "tesla" || s == "Tesla") return GpuGrade::Tesla;
    if (s == "consumer" || s == "Consumer") return GpuGrade::Consumer;
    throw std::invalid_argument("unknown grade: " + s);
}

void GpuSpec::validate() const {
    if (name.empty()) throw std::invalid_argument("spec has empty name");
    auto positive = [&](double v, const char* field) {
        if (!(v > 0.0))
            throw std::invalid_argument("spec '" + name + "': " + field +
                                        " must be strictly positive");
    };
    positive(mem_bw_gbs, "mem_bw_gbs");
    positive(peak_fp32_tflops, "fp32_tflops");
    positive(peak_fp64_tflops, "fp64_tflops");
    positive(static_cast<double>(sm_count), "sms");
    positive(tdp_w, "tdp_w");
    positive(die_area_mm2, "die_mm2");
    positive(mem_capacity_gb, "mem_gb");
    if (peak_fp64_tflops > peak_fp32_tflops)
        throw std::invalid_argument("spec '" + name + "': fp64 peak exceeds fp32 peak");
}

double byte_per_flop(const GpuSpec& spec, Precision p) {
    return spec.mem_bw_gbs / spec.peak_gflops(p);
}

double compute_density(const GpuSpec& spec, Precision p) {
    return spec.peak_gflops(p) / spec.die_area_mm2;
}

SpeedupExpectation expected_speedup(const GpuSpec& old_dev, const GpuSpec& new_dev,
                                    Precision p) {
    SpeedupExpectation s;
    s.flop_ratio = new_dev.peak_gflops(p) / old_dev.peak_gflops(p);
    s.bw_ratio = new_dev.mem_bw_gbs / old_dev.mem_bw_gbs;
    s.t_speedup = std::min(s.flop_ratio, s.bw_ratio);
    return s;
}

DerivedMetrics derived_metrics(const GpuSpec& spec) {
    return {byte_per_flop(spec, Precision::Fp32), byte_per_flop(spec, Precision::Fp64),
            compute_density(spec, Precision::Fp32),
            compute_density(spec, Precision::Fp64)};
}

const std::vector<GpuSpec>& builtin_specs() {
    static const std::vector<GpuSpec> specs = [] {
        std::vector<GpuSpec> v{
            {"K80", "2014 Q4", "Kepler", GpuGrade::Tesla, 240.6, 4.113, 1.371, 13, 300,
             561, 12},
            {"P100", "2016 Q2", "Pascal", GpuGrade::Tesla, 732.2, 10.61, 5.304, 56, 300,
             610, 16},
            {"V100", "2017 Q3", "Volta", GpuGrade::Tesla, 897.0, 14.13, 7.066, 80, 300,
             815, 16},
            {"A100", "2020 Q3", "Ampere", GpuGrade::Tesla, 1555.0, 19.49, 9.746, 108,
             250, 826, 40},
            {"GTX 745", "2014 Q1", "Maxwell", GpuGrade::Consumer, 28.80, 0.793, 0.02479,
             3, 55, 148, 4},
            {"K2200", "2014 Q3", "Maxwell", GpuGrade::Consumer, 80.19, 1.439, 0.04496,
             5, 68, 148, 4},
            {"GTX 1050 Ti", "2016 Q4", "Pascal", GpuGrade::Consumer, 112.1, 2.138,
             0.0668, 6, 75, 132, 4},
            {"RTX 2060 SUPER", "2019 Q3", "Turing", GpuGrade::Consumer, 448.0, 7.181,
             0.224, 34, 175, 445, 8},
        };
        for (const auto& s : v) s.validate();
        return v;
    }();
    return specs;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

constexpr const char* kSpecsHeader =
    "name,year,arch,grade,mem_bw_gbs,fp32_tflops,fp64_tflops,sms,tdp_w,die_mm2,mem_gb";

}  // namespace

std::vector<GpuSpec> load_specs_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("spec file is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kSpecsHeader)
        throw std::runtime_error("spec file: unexpected header '" + line + "'");

    std::vector<GpuSpec> out;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        if (f.size() != 11)
            throw std::runtime_error("spec file line " + std::to_string(line_no) +
                                     ": expected 11 fields, got " +
                                     std::to_string(f.size()));
        GpuSpec s;
        try {
            s.name = f[0];
            s.year = f[1];
            s.architecture = f[2];
            s.grade = grade_from_string(f[3]);
            s.mem_bw_gbs = std::stod(f[4]);
            s.peak_fp32_tflops = std::stod(f[5]);
            s.peak_fp64_tflops = std::stod(f[6]);
            s.sm_count = std::stoi(f[7]);
            s.tdp_w = std::stod(f[8]);
            s.die_area_mm2 = std::stod(f[9]);
            s.mem_capacity_gb = std::stod(f[10]);
            s.validate();
        } catch (const std::exception& e) {
            throw std::runtime_error("spec file line " + std::to_string(line_no) + ": " +
                                     e.what());
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<GpuSpec> load_specs_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open spec file: " + path);
    return load_specs_csv(in);
}

void write_specs_csv(std::ostream& out, const std::vector<GpuSpec>& specs) {
    out << kSpecsHeader << "\n";
    for (const auto& s : specs) {
        out << s.name << ',' << s.year << ',' << s.architecture << ','
            << to_string(s.grade) << ',' << s.mem_bw_gbs << ',' << s.peak_fp32_tflops
            << ',' << s.peak_fp64_tflops << ',' << s.sm_count << ',' << s.tdp_w << ','
            << s.die_area_mm2 << ',' << s.mem_capacity_gb << "\n";
    }
}

namespace {

// "RTX 2060 SUPER" == "rtx2060super" == "rtx-2060-super"
std::string normalized_name(const std::string& name) {
    std::string out;
    for (char c : name) {
        if (c == ' ' || c == '-' || c == '_') continue;
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

}  // namespace

const GpuSpec& find_spec(const std::vector<GpuSpec>& specs, const std::string& name) {
    const std::string want = normalized_name(name);
    for (const auto& s : specs)
        if (normalized_name(s.name) == want) return s;
    throw std::runtime_error("no device named '" + name + "' in spec database");
}

}  // namespace tilesim
