#include <cmath>
#include <numbers>

#include "inrs/domains.hpp"
#include "inrs/io.hpp"

namespace inrs {

namespace {

BoundaryCurve unit_circle() {
  const double h = std::numbers::sqrt2 / 2.0;
  NurbsSide s;
  s.degree = 2;
  s.knots = {0, 0, 0, 0.25, 0.25, 0.5, 0.5, 0.75, 0.75, 1, 1, 1};
  s.control_points = {{1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}, {1, 0}};
  s.weights = {1, h, 1, h, 1, h, 1, h, 1};
  return BoundaryCurve({s}, "circle");
}

BoundaryCurve unit_square() {
  const std::vector<Point2> v{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
  return polygon_boundary(v, "square");
}

// Right half of the unit circle closed by a horizontal and a slanted segment.
BoundaryCurve mixed() {
  const double h = std::numbers::sqrt2 / 2.0;
  NurbsSide arc;
  arc.degree = 2;
  arc.knots = {0, 0, 0, 0.5, 0.5, 1, 1, 1};
  arc.control_points = {{0, -1}, {1, -1}, {1, 0}, {1, 1}, {0, 1}};
  arc.weights = {1, h, 1, h, 1};
  return BoundaryCurve({arc, segment_side({0, 1}, {-1, 1}), segment_side({-1, 1}, {0, -1})}, "mixed");
}

// Closed clamped cubic with interior knots and non-unit weights.
BoundaryCurve multispan() {
  NurbsSide s;
  s.degree = 3;
  s.knots = {0, 0, 0, 0, 0.2, 0.4, 0.6, 0.8, 1, 1, 1, 1};
  s.control_points = {{1, 0},       {1, 0.8},   {0.2, 1.1},  {-0.9, 0.7},
                      {-1.1, -0.3}, {-0.3, -1}, {0.7, -0.9}, {1, 0}};
  s.weights = {1, 1.2, 0.9, 1.1, 1, 0.8, 1.3, 1};
  return BoundaryCurve({s}, "multispan");
}

}  // namespace

std::vector<std::string> builtin_domain_names() { return {"circle", "square", "mixed", "multispan"}; }

bool is_builtin_domain(const std::string& name) {
  for (const auto& n : builtin_domain_names())
    if (n == name) return true;
  return false;
}

BoundaryCurve builtin_domain(const std::string& name) {
  if (name == "circle") return unit_circle();
  if (name == "square") return unit_square();
  if (name == "mixed") return mixed();
  if (name == "multispan") return multispan();
  throw InputError("unknown builtin domain '" + name + "' (expected circle, square, mixed or multispan)");
}

NurbsSide segment_side(Point2 a, Point2 b) {
  NurbsSide s;
  s.degree = 1;
  s.knots = {0, 0, 1, 1};
  s.control_points = {a, b};
  s.weights = {1, 1};
  return s;
}

NurbsSide arc_side(Point2 c, double r, double a0, double a1) {
  const double sweep = a1 - a0;
  const int spans = std::max(1, static_cast<int>(std::ceil(std::abs(sweep) / (std::numbers::pi / 2) - 1e-12)));
  const double step = sweep / spans;
  const double w = std::cos(step / 2);
  NurbsSide s;
  s.degree = 2;
  s.knots = {0, 0, 0};
  auto on = [&](double a) { return Point2{c.x + r * std::cos(a), c.y + r * std::sin(a)}; };
  s.control_points.push_back(on(a0));
  s.weights.push_back(1);
  for (int k = 0; k < spans; ++k) {
    const double mid = a0 + (k + 0.5) * step;
    s.control_points.push_back(Point2{c.x + r / w * std::cos(mid), c.y + r / w * std::sin(mid)});
    s.weights.push_back(w);
    s.control_points.push_back(on(a0 + (k + 1) * step));
    s.weights.push_back(1);
    const double kn = static_cast<double>(k + 1) / spans;
    s.knots.push_back(kn);
    s.knots.push_back(kn);
  }
  s.knots.back() = 1;
  s.knots.push_back(1);
  return s;
}

BoundaryCurve polygon_boundary(std::span<const Point2> v, std::string name) {
  std::vector<NurbsSide> sides;
  for (std::size_t i = 0; i < v.size(); ++i) sides.push_back(segment_side(v[i], v[(i + 1) % v.size()]));
  return BoundaryCurve(std::move(sides), std::move(name));
}

}  // namespace inrs
