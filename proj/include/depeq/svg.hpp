#pragma once

#include <string>

#include "depeq/curve22.hpp"
#include "depeq/region.hpp"

namespace depeq {

// Standalone SVG of a payoff-region raster. Two-player rasters are drawn as
// one panel; three-player rasters as the three mid-cell coordinate slices
// side by side. Inside cells are filled green, boundary-uncertain cells
// grey; the payoff polytope outline and (for two players) the zero sets of
// the boundary candidate polynomials are overlaid. Bytes are deterministic
// for a fixed input.
std::string render_region_svg(const Game& g, const RegionRaster& r);

// SVG of the traced simplex arcs of a 2x2 game in payoff space: polytope
// outline, arc polylines, labelled endpoint markers, and the rank-one point
// when it lies in the open simplex.
std::string render_arcs_svg(const Game& g, const ArcReport& rep);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace depeq
