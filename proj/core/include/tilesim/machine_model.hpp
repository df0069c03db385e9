#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tilesim {

enum class Precision { Fp32, Fp64 };
enum class GpuGrade { Tesla, Consumer };

const char* to_string(Precision p);
const char* to_string(GpuGrade g);
Precision precision_from_string(const std::string& s);
GpuGrade grade_from_string(const std::string& s);

// One device row of the spec database. Peaks are stored in the units the
// spec files carry (TFLOP/s, GB/s); conversion to GFLOP/s happens in the
// accessor so ratios are always unit-consistent.
struct GpuSpec {
    std::string name;
    std::string year;          // calendar quarter, e.g. "2020 Q3"
    std::string architecture;
    GpuGrade grade = GpuGrade::Tesla;
    double mem_bw_gbs = 0.0;
    double peak_fp32_tflops = 0.0;
    double peak_fp64_tflops = 0.0;
    int sm_count = 0;
    double tdp_w = 0.0;
    double die_area_mm2 = 0.0;
    double mem_capacity_gb = 0.0;

    double peak_gflops(Precision p) const {
        return (p == Precision::Fp32 ? peak_fp32_tflops : peak_fp64_tflops) * 1000.0;
    }

    // Throws std::invalid_argument on nonpositive fields or fp64 > fp32.
    void validate() const;
};

struct DerivedMetrics {
    double bf_fp32;       // bytes per flop
    double bf_fp64;
    double density_fp32;  // GFLOP/s per mm^2
    double density_fp64;
};

struct SpeedupExpectation {
    double flop_ratio;
    double bw_ratio;
    double t_speedup;  // min(flop_ratio, bw_ratio)
};

// Machine balance: mem_bw [GB/s] / peak [GFLOP/s].
double byte_per_flop(const GpuSpec& spec, Precision p);

// peak [GFLOP/s] / die_area [mm^2].
double compute_density(const GpuSpec& spec, Precision p);

SpeedupExpectation expected_speedup(const GpuSpec& old_dev, const GpuSpec& new_dev,
                                    Precision p);

DerivedMetrics derived_metrics(const GpuSpec& spec);

// The embedded default database (8 devices, four Tesla + four consumer).
const std::vector<GpuSpec>& builtin_specs();

// CSV with header:
//   name,year,arch,grade,mem_bw_gbs,fp32_tflops,fp64_tflops,sms,tdp_w,die_mm2,mem_gb
// Rows are validated on load; throws std::runtime_error with the line number
// on malformed input.
std::vector<GpuSpec> load_specs_csv(std::istream& in);
std::vector<GpuSpec> load_specs_file(const std::string& path);

void write_specs_csv(std::ostream& out, const std::vector<GpuSpec>& specs);

const GpuSpec& find_spec(const std::vector<GpuSpec>& specs, const std::string& name);

}  // namespace tilesim
