#pragma once

#include <iosfwd>
#include <vector>

#include "tilesim/roofline.hpp"

namespace tilesim {

// Self-contained log-log roofline plot: the roof polyline plus overlaid
// points. No external plotting dependency.
void write_roofline_svg(std::ostream& out, const Roofline& roof,
                        const std::vector<RooflinePoint>& points,
                        double ai_min, double ai_max);

}  // namespace tilesim
