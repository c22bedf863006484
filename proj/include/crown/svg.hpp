#pragma once

#include <string>

#include "crown/geometry.hpp"

namespace crown {

// Exact decimal of `value` rounded to the 1/64 grid, without trailing zeros.
std::string svg_number(const Rational& value);

// Boxes as rectangles with centered labels; the y axis points up in the
// layout and down in the picture. The viewBox is the bounding box plus a 5%
// margin on every side.
std::string render_svg(const Layout& layout);

}  // namespace crown
