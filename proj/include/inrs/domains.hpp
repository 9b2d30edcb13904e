#pragma once

#include <span>
#include <string>
#include <vector>

#include "inrs/curve_model.hpp"

namespace inrs {

std::vector<std::string> builtin_domain_names();
/// circle, square, mixed or multispan. Throws InputError for other names.
BoundaryCurve builtin_domain(const std::string& name);
bool is_builtin_domain(const std::string& name);

/// Degree-1 side from a to b.
NurbsSide segment_side(Point2 a, Point2 b);
/// Rational quadratic arc of the circle (center, r) from angle a0 to a1, one
/// span per quarter turn or less. a1 < a0 runs clockwise.
NurbsSide arc_side(Point2 center, double r, double a0, double a1);
/// Closed polygon with one degree-1 side per edge.
BoundaryCurve polygon_boundary(std::span<const Point2> vertices, std::string name = {});

}  // namespace inrs
