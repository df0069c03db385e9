#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace tilesim {

struct Roofline {
    double peak_gflops;     // flat ceiling
    double bandwidth_gbs;   // slope of the memory arm
};

struct RooflinePoint {
    double ai;              // flops per byte
    double achieved_gflops;
    std::string label;
};

enum class Bound { MemoryBound, ComputeBound };

// min(peak, bandwidth * ai)
double attainable(const Roofline& roof, double ai);

// AI where the two arms meet: peak / bandwidth.
double ridge_point(const Roofline& roof);

// MemoryBound iff ai < ridge; the tie at the ridge is ComputeBound.
Bound classify(const Roofline& roof, double ai);

// Log-spaced (ai, attainable) samples over [ai_min, ai_max].
std::vector<std::pair<double, double>> sample_roofline(const Roofline& roof,
                                                       double ai_min, double ai_max,
                                                       int n_samples);

// CSV rows `kind,ai,gflops,label` where kind is "roof" or "point".
void write_roofline_csv(std::ostream& out, const Roofline& roof,
                        const std::vector<RooflinePoint>& points,
                        double ai_min, double ai_max, int n_samples);

// Accepts either a roofline CSV (point rows) or a sweep CSV (ai/gflops
// columns, labeled by pattern). Throws std::runtime_error on unknown header.
std::vector<RooflinePoint> read_points_csv(std::istream& in);

}  // namespace tilesim
