#pragma once

#include <span>
#include <string>

#include "inrs/classifier.hpp"
#include "inrs/curve_model.hpp"

namespace inrs {

/// Static picture: boundary, monotone boxes, critical lines and labelled points
/// (at most max_points, evenly strided).
std::string render_svg(const BoundaryCurve& curve, const Geometry& g, std::span<const Point2> pts,
                       std::span<const Label> labels, std::size_t max_points = 20000);

}  // namespace inrs
