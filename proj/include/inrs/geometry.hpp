#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace inrs {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }

inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline bool is_finite(Point2 a) { return std::isfinite(a.x) && std::isfinite(a.y); }

/// Closed axis-aligned rectangle [xmin, xmax] x [ymin, ymax].
struct Rect {
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -std::numeric_limits<double>::infinity();
  double ymin = std::numeric_limits<double>::infinity();
  double ymax = -std::numeric_limits<double>::infinity();

  bool empty() const { return xmin > xmax || ymin > ymax; }
  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double diagonal() const { return empty() ? 0.0 : std::hypot(width(), height()); }

  void expand(Point2 p) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  void expand(const Rect& r) {
    xmin = std::min(xmin, r.xmin);
    xmax = std::max(xmax, r.xmax);
    ymin = std::min(ymin, r.ymin);
    ymax = std::max(ymax, r.ymax);
  }
  bool contains(Point2 p, double pad = 0.0) const {
    return p.x >= xmin - pad && p.x <= xmax + pad && p.y >= ymin - pad && p.y <= ymax + pad;
  }
  Rect inflated(double pad) const { return {xmin - pad, xmax + pad, ymin - pad, ymax + pad}; }

  friend bool operator==(const Rect&, const Rect&) = default;
};

enum class Orientation { counterclockwise, clockwise };

/// Thrown for every malformed or unsupported boundary description.
class GeometryError : public std::runtime_error {
 public:
  enum class Kind {
    bad_degree,
    bad_knots,
    size_mismatch,
    non_positive_weight,
    non_finite,
    open_curve,
    non_abutting_sides,
    vanishing_denominator,
    piece_mismatch,
    degenerate_piece,
    monotonicity_violation,
    empty_curve,
  };

  GeometryError(Kind kind, const std::string& what, int side = -1, int span = -1)
      : std::runtime_error(what), kind_(kind), side_(side), span_(span) {}

  Kind kind() const { return kind_; }
  int side() const { return side_; }
  int span() const { return span_; }

 private:
  Kind kind_;
  int side_;
  int span_;
};

}  // namespace inrs
