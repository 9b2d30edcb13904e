#pragma once

#include <span>
#include <string>
#include <vector>

#include "inrs/geometry.hpp"
#include "inrs/polynomial.hpp"

namespace inrs {

/// One NURBS side of the boundary. Knots must be clamped.
struct NurbsSide {
  int degree = 1;
  std::vector<double> knots;
  std::vector<Point2> control_points;
  std::vector<double> weights;

  double t_begin() const { return knots.front(); }
  double t_end() const { return knots.back(); }

  friend bool operator==(const NurbsSide&, const NurbsSide&) = default;
};

struct BasisValues {
  /// Knot span index i with knots[i] <= t < knots[i+1] (last non-empty span at the right end).
  int span = 0;
  /// B_{span-p}, ..., B_{span}.
  std::vector<double> values;
};

/// Index of the non-empty knot span containing t. Throws std::domain_error outside the knot range.
int find_span(std::span<const double> knots, int degree, double t);

/// Nonzero B-spline basis values at t (Cox-de Boor).
BasisValues eval_basis(std::span<const double> knots, int degree, double t);
/// Same, with the knot span fixed by the caller.
BasisValues eval_basis_in_span(std::span<const double> knots, int degree, int span, double t);

/// Rational NURBS evaluation. Throws std::domain_error when t is outside the side's interval.
Point2 eval_curve(const NurbsSide& side, double t);

/// Checks the local invariants of a single side (degree, knot vector, weights, sizes).
void validate_side(const NurbsSide& side, int side_index);

/// Closed boundary made of NURBS sides. Side k is glued onto the global
/// parameter interval [k, k+1]; the whole curve lives on [0, K].
class BoundaryCurve {
 public:
  static constexpr double kDefaultCloseTolerance = 1e-10;

  /// Validates and freezes the sides. `close_rel_tol` is relative to the
  /// diagonal of the control-point bounding box.
  explicit BoundaryCurve(std::vector<NurbsSide> sides, std::string name = {},
                         double close_rel_tol = kDefaultCloseTolerance);

  const std::vector<NurbsSide>& sides() const { return sides_; }
  const std::string& name() const { return name_; }
  Orientation orientation() const { return orientation_; }
  std::size_t side_count() const { return sides_.size(); }
  double t_min() const { return 0.0; }
  double t_max() const { return static_cast<double>(sides_.size()); }
  /// Bounding box of all control points; contains the curve.
  const Rect& control_box() const { return control_box_; }
  /// Absolute closure tolerance used during validation.
  double close_tolerance() const { return close_tol_; }

  /// Global parameter t in [0, K].
  Point2 eval(double t) const;
  /// Maps a global parameter onto (side index, local knot parameter).
  std::pair<int, double> to_local(double t) const;

  /// Dense closed polyline sample, `n` points spread evenly over the global parameter.
  std::vector<Point2> sample(int n) const;

 private:
  std::vector<NurbsSide> sides_;
  std::string name_;
  Orientation orientation_ = Orientation::counterclockwise;
  Rect control_box_;
  double close_tol_ = 0.0;
};

/// Number of polyline points used for orientation detection.
inline constexpr int kOrientationSamples = 4096;

/// Closure and abutment check followed by orientation detection from the
/// signed area of a dense polyline sample.
Orientation validate_boundary(std::span<const NurbsSide> sides, double close_rel_tol);

/// Signed area of a closed polyline (shoelace formula), positive for counterclockwise.
double signed_area(std::span<const Point2> polyline);

/// Local rational representation of the boundary on one knot span:
/// alpha = u/v, beta = w/z on the normalized parameter s in [0, 1].
struct RationalPiece {
  double a = 0.0;  ///< global parameter at s = 0
  double b = 0.0;  ///< global parameter at s = 1
  Polynomial u, v, w, z;
  int side_index = 0;
  int span_index = 0;

  double alpha(double s) const { return u(s) / v(s); }
  double beta(double s) const { return w(s) / z(s); }
  Point2 point(double s) const { return {alpha(s), beta(s)}; }
  double global_t(double s) const { return a + s * (b - a); }
};

inline constexpr double kDefaultPieceTolerance = 1e-10;

/// One piece per non-empty knot span, in boundary order. Each piece is
/// obtained by interpolating the span's numerators and denominator at
/// degree+1 Chebyshev points and converting to the power basis in s.
std::vector<RationalPiece> extract_pieces(const BoundaryCurve& curve,
                                          double piece_rel_tol = kDefaultPieceTolerance);

/// Power-basis coefficients of the polynomial through (nodes[i], values[i]).
std::vector<double> interpolate_power_basis(std::span<const double> nodes,
                                            std::span<const double> values);

/// Chebyshev points of the first kind mapped onto [0, 1], ascending.
std::vector<double> chebyshev_nodes01(int n);

}  // namespace inrs
