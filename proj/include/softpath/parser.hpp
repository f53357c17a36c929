#pragma once

#include <string_view>

#include "softpath/geom.hpp"
#include "softpath/path.hpp"

namespace softpath {

// SVG path data (M L H V C Q A Z, absolute and relative) to a soft path.
// Quadratics are degree-elevated and arcs converted to cubics, so the result
// only holds lines and cubics. Throws ParseError.
SoftPath parse_path(std::string_view input);

// Whitespace or comma separated list of shift(dx,dy), rotate(deg), scale(s),
// xscale(s), yscale(s); the leftmost item is applied to the path first.
// Numbers may carry a `pt` suffix. Throws ParseError.
Transform2D parse_transform(std::string_view input);

}  // namespace softpath
