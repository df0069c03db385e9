#include "tilesim/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace tilesim {

namespace {

constexpr double kWidth = 640, kHeight = 480;
constexpr double kLeft = 70, kRight = 20, kTop = 20, kBottom = 50;

struct LogScale {
    double lo, hi, pix_lo, pix_hi;
    double operator()(double v) const {
        double f = (std::log10(v) - std::log10(lo)) / (std::log10(hi) - std::log10(lo));
        return pix_lo + f * (pix_hi - pix_lo);
    }
};

std::string num(double v) {
    std::ostringstream ss;
    ss << std::setprecision(4) << v;
    return ss.str();
}

}  // namespace

void write_roofline_svg(std::ostream& out, const Roofline& roof,
                        const std::vector<RooflinePoint>& points,
                        double ai_min, double ai_max) {
    double g_lo = attainable(roof, ai_min) / 4.0;
    double g_hi = roof.peak_gflops * 2.0;
    for (const auto& p : points) {
        if (p.ai > 0.0) {
            ai_min = std::min(ai_min, p.ai);
            ai_max = std::max(ai_max, p.ai);
        }
        if (p.achieved_gflops > 0.0) g_lo = std::min(g_lo, p.achieved_gflops / 2.0);
    }
    LogScale x{ai_min, ai_max, kLeft, kWidth - kRight};
    LogScale y{g_lo, g_hi, kHeight - kBottom, kTop};

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight
        << "\">\n";
    out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n";

    // Decade gridlines and tick labels on both log axes.
    for (int d = static_cast<int>(std::ceil(std::log10(ai_min)));
         d <= static_cast<int>(std::floor(std::log10(ai_max))); ++d) {
        double v = std::pow(10.0, d);
        out << "<line x1=\"" << x(v) << "\" y1=\"" << kTop << "\" x2=\"" << x(v)
            << "\" y2=\"" << kHeight - kBottom
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << x(v) << "\" y=\"" << kHeight - kBottom + 18
            << "\" font-size=\"11\" text-anchor=\"middle\">" << num(v) << "</text>\n";
    }
    for (int d = static_cast<int>(std::ceil(std::log10(g_lo)));
         d <= static_cast<int>(std::floor(std::log10(g_hi))); ++d) {
        double v = std::pow(10.0, d);
        out << "<line x1=\"" << kLeft << "\" y1=\"" << y(v) << "\" x2=\""
            << kWidth - kRight << "\" y2=\"" << y(v)
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << kLeft - 6 << "\" y=\"" << y(v) + 4
            << "\" font-size=\"11\" text-anchor=\"end\">" << num(v) << "</text>\n";
    }

    out << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\"" << kHeight - 12
        << "\" font-size=\"13\" text-anchor=\"middle\">arithmetic intensity "
           "(flop/byte)</text>\n";
    out << "<text x=\"16\" y=\"" << (kTop + kHeight - kBottom) / 2
        << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << (kTop + kHeight - kBottom) / 2 << ")\">GFLOP/s</text>\n";

    out << "<polyline fill=\"none\" stroke=\"#202020\" stroke-width=\"2\" points=\"";
    for (const auto& [ai, gf] : sample_roofline(roof, ai_min, ai_max, 64))
        out << x(ai) << "," << y(gf) << " ";
    out << "\"/>\n";

    const char* palette[] = {"#d62728", "#1f77b4", "#2ca02c", "#ff7f0e",
                             "#9467bd", "#8c564b"};
    std::vector<std::string> labels;
    for (const auto& p : points) {
        if (p.ai <= 0.0 || p.achieved_gflops <= 0.0) continue;
        auto it = std::find(labels.begin(), labels.end(), p.label);
        std::size_t li;
        if (it == labels.end()) {
            labels.push_back(p.label);
            li = labels.size() - 1;
        } else {
            li = static_cast<std::size_t>(it - labels.begin());
        }
        out << "<circle cx=\"" << x(p.ai) << "\" cy=\"" << y(p.achieved_gflops)
            << "\" r=\"4\" fill=\"" << palette[li % 6] << "\" fill-opacity=\"0.8\"/>\n";
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
        double ly = kTop + 14 + 16 * static_cast<double>(i);
        out << "<circle cx=\"" << kLeft + 12 << "\" cy=\"" << ly - 4 << "\" r=\"4\" fill=\""
            << palette[i % 6] << "\"/>\n";
        out << "<text x=\"" << kLeft + 22 << "\" y=\"" << ly
            << "\" font-size=\"12\">" << (labels[i].empty() ? "points" : labels[i])
            << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace tilesim
