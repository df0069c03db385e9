#include "tilesim/roofline.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace tilesim {

double attainable(const Roofline& roof, double ai) {
    if (ai < 0.0) throw std::invalid_argument("arithmetic intensity must be >= 0");
    return std::min(roof.peak_gflops, roof.bandwidth_gbs * ai);
}

double ridge_point(const Roofline& roof) {
    return roof.peak_gflops / roof.bandwidth_gbs;
}

Bound classify(const Roofline& roof, double ai) {
    if (ai < 0.0) throw std::invalid_argument("arithmetic intensity must be >= 0");
    return ai < ridge_point(roof) ? Bound::MemoryBound : Bound::ComputeBound;
}

std::vector<std::pair<double, double>> sample_roofline(const Roofline& roof,
                                                       double ai_min, double ai_max,
                                                       int n_samples) {
    if (!(ai_min > 0.0) || !(ai_max > ai_min) || n_samples < 2)
        throw std::invalid_argument("bad roofline sampling range");
    std::vector<std::pair<double, double>> out;
    out.reserve(static_cast<size_t>(n_samples) + 1);
    const double lmin = std::log10(ai_min);
    const double lmax = std::log10(ai_max);
    for (int i = 0; i < n_samples; ++i) {
        double ai = std::pow(10.0, lmin + (lmax - lmin) * i / (n_samples - 1));
        out.emplace_back(ai, attainable(roof, ai));
    }
    // The ridge is the only kink; include it so the polyline is exact.
    double ridge = ridge_point(roof);
    if (ridge > ai_min && ridge < ai_max) {
        auto it = out.begin();
        while (it != out.end() && it->first < ridge) ++it;
        out.insert(it, {ridge, attainable(roof, ridge)});
    }
    return out;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

void format_value(std::ostream& out, double v) {
    std::ostringstream ss;
    ss << std::setprecision(12) << v;
    out << ss.str();
}

}  // namespace

void write_roofline_csv(std::ostream& out, const Roofline& roof,
                        const std::vector<RooflinePoint>& points,
                        double ai_min, double ai_max, int n_samples) {
    out << "kind,ai,gflops,label\n";
    for (const auto& [ai, gf] : sample_roofline(roof, ai_min, ai_max, n_samples)) {
        out << "roof,";
        format_value(out, ai);
        out << ',';
        format_value(out, gf);
        out << ",\n";
    }
    for (const auto& p : points) {
        out << "point,";
        format_value(out, p.ai);
        out << ',';
        format_value(out, p.achieved_gflops);
        out << ',' << p.label << "\n";
    }
}

std::vector<RooflinePoint> read_points_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("points file is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::vector<RooflinePoint> points;
    if (line == "kind,ai,gflops,label") {
        int line_no = 1;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            auto f = split_line(line);
            if (f.size() != 4)
                throw std::runtime_error("points file line " + std::to_string(line_no) +
                                         ": expected 4 fields");
            if (f[0] != "point") continue;
            points.push_back({std::stod(f[1]), std::stod(f[2]), f[3]});
        }
        return points;
    }

    // Sweep CSV: locate the ai/gflops columns by header name.
    auto header = split_line(line);
    int ai_col = -1, gf_col = -1, pat_col = -1, wait_col = -1, err_col = -1;
    for (int i = 0; i < static_cast<int>(header.size()); ++i) {
        if (header[i] == "ai") ai_col = i;
        if (header[i] == "gflops") gf_col = i;
        if (header[i] == "pattern") pat_col = i;
        if (header[i] == "wait") wait_col = i;
        if (header[i] == "error") err_col = i;
    }
    if (ai_col < 0 || gf_col < 0)
        throw std::runtime_error("points file: header has no ai/gflops columns");
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto f = split_line(line);
        if (static_cast<int>(f.size()) <= std::max(ai_col, gf_col))
            throw std::runtime_error("points file line " + std::to_string(line_no) +
                                     ": too few fields");
        if (err_col >= 0 && err_col < static_cast<int>(f.size()) && !f[err_col].empty())
            continue;
        if (f[gf_col].empty()) continue;
        std::string label;
        if (pat_col >= 0) label = f[pat_col];
        if (wait_col >= 0 && f[wait_col] != "-" && !f[wait_col].empty())
            label += "/" + f[wait_col];
        points.push_back({std::stod(f[ai_col]), std::stod(f[gf_col]), label});
    }
    return points;
}

}  // namespace tilesim
