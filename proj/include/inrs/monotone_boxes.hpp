#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "inrs/curve_model.hpp"
#include "inrs/geometry.hpp"
#include "inrs/polynomial.hpp"

namespace inrs {

enum class Monotonicity : std::uint8_t { increasing, decreasing, constant };

/// A parameter subinterval of one piece on which both coordinate functions are
/// constant or strictly monotone, together with its Cartesian rectangle.
struct MonotoneBox {
  std::uint32_t piece = 0;
  double s0 = 0.0, s1 = 1.0;  ///< local parameter range inside the piece
  double t0 = 0.0, t1 = 0.0;  ///< global parameter range
  /// Curve values at s0 and s1. Neighbouring boxes share these bitwise.
  Point2 start, end;
  Rect rect;
  Monotonicity x_mono = Monotonicity::constant;
  Monotonicity y_mono = Monotonicity::constant;

  bool x_constant() const { return x_mono == Monotonicity::constant; }
  bool y_constant() const { return y_mono == Monotonicity::constant; }
  bool degenerate() const { return x_constant() || y_constant(); }
};

/// Abscissas (ordinates) where a vertical (horizontal) ray may touch the
/// boundary without crossing it. Sorted and deduplicated.
struct CriticalSet {
  std::vector<double> x_critical;
  std::vector<double> y_critical;
};

/// Derivative data and monotone split of one rational piece.
struct PieceAnalysis {
  Polynomial dx_num;  ///< u'v - uv'
  Polynomial dy_num;  ///< w'z - wz'
  bool x_constant = false;
  bool y_constant = false;
  std::vector<double> x_tangency;  ///< s in [0, 1] with dx_num(s) = 0
  std::vector<double> y_tangency;
  std::vector<double> breaks;  ///< 0 = breaks[0] < ... < breaks.back() = 1
};

/// Splits a piece at the interior zeros of both derivative numerators.
/// Throws GeometryError(degenerate_piece) when both coordinates are constant.
PieceAnalysis split_monotone(const RationalPiece& piece);

/// Tangency abscissas/ordinates plus turning vertices between consecutive pieces.
CriticalSet collect_critical(std::span<const RationalPiece> pieces, std::span<const PieceAnalysis> analysis,
                             double merge_tol);

/// Derivatives of the piece polynomials, kept for quadrature.
struct PieceDerivs {
  Polynomial du, dv, dw, dz;
};

/// Everything the classifier needs, built once per boundary.
class Geometry {
 public:
  const std::vector<RationalPiece>& pieces() const { return pieces_; }
  const std::vector<PieceAnalysis>& analysis() const { return analysis_; }
  const std::vector<PieceDerivs>& derivs() const { return derivs_; }
  /// Boxes sorted by rect.xmin.
  const std::vector<MonotoneBox>& boxes() const { return boxes_; }
  /// prefix_max_xmax()[i] = max rect.xmax over boxes()[0..i].
  const std::vector<double>& prefix_max_xmax() const { return prefix_max_xmax_; }
  /// Box indices sorted by rect.ymin, and the matching prefix maximum of rect.ymax.
  const std::vector<std::uint32_t>& by_ymin() const { return by_ymin_; }
  const std::vector<double>& prefix_max_ymax() const { return prefix_max_ymax_; }
  const CriticalSet& critical() const { return critical_; }
  const Rect& global_box() const { return global_box_; }
  Orientation orientation() const { return orientation_; }
  int refine() const { return refine_; }
  double parameter_length() const { return parameter_length_; }

  friend Geometry build_boxes(const BoundaryCurve& curve, int refine);

 private:
  std::vector<RationalPiece> pieces_;
  std::vector<PieceAnalysis> analysis_;
  std::vector<PieceDerivs> derivs_;
  std::vector<MonotoneBox> boxes_;
  std::vector<double> prefix_max_xmax_;
  std::vector<std::uint32_t> by_ymin_;
  std::vector<double> prefix_max_ymax_;
  CriticalSet critical_;
  Rect global_box_;
  Orientation orientation_ = Orientation::counterclockwise;
  int refine_ = 1;
  double parameter_length_ = 0.0;
};

inline constexpr int kDefaultRefine = 4;

/// Builds monotone boxes, the critical set and the global bounding box. Each
/// monotone interval is cut into `refine` equal parts.
Geometry build_boxes(const BoundaryCurve& curve, int refine = kDefaultRefine);

}  // namespace inrs
