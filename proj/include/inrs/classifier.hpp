#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "inrs/geometry.hpp"
#include "inrs/kernels.hpp"
#include "inrs/monotone_boxes.hpp"

namespace inrs {

enum class Label : std::uint8_t { outside = 0, inside = 1, boundary = 2 };

struct ClassifyOptions {
  /// Absolute boundary tolerance; negative selects 1e-9 * global box diagonal.
  double boundary_tol = -1.0;
  /// Absolute criticality tolerance; negative selects 1e-9 * global box width
  /// (height for the horizontal ray).
  double critical_tol = -1.0;
  /// Emit Label::boundary instead of folding boundary points into Label::inside.
  bool report_boundary = false;
  int quad_order = 16;
  int max_depth = 30;
  int threads = 1;
  /// Sorted path only: solve the band points of a box together with the
  /// monotone Newton kernel, falling back to the general root solver per point.
  bool batched_solve = true;
  /// Kernel set; null selects kernels::active().
  const kernels::KernelTable* kernels = nullptr;
};

/// Tolerances after resolving the relative defaults against a geometry.
struct Tolerances {
  double boundary = 0.0;
  double critical_x = 0.0;
  double critical_y = 0.0;
};
Tolerances resolve_tolerances(const Geometry& g, const ClassifyOptions& opts);

struct ClassifyStats {
  std::size_t points = 0;
  std::size_t in_box = 0;            ///< points inside the global bounding box
  std::size_t equations = 0;         ///< intersection equations solved by the vertical pass
  std::size_t boxes_visited = 0;     ///< (point, box) pairs examined by the vertical pass
  std::size_t dubious_vertical = 0;  ///< points sent to the horizontal ray
  std::size_t dubious_horizontal = 0;  ///< points sent to the winding number
  std::size_t winding_nonconverged = 0;
  std::size_t consistency_errors = 0;  ///< root-count mismatches inside monotone boxes

  /// Mean number of intersection equations per point of the cloud inside the bounding box.
  double nu() const { return in_box == 0 ? 0.0 : static_cast<double>(equations) / static_cast<double>(in_box); }
  std::size_t diagnostics() const { return winding_nonconverged + consistency_errors; }
  ClassifyStats& operator+=(const ClassifyStats& o);
};

enum class RayOutcome : std::uint8_t { not_crossed, crossed, boundary_hit, critical, inconsistent };

struct RayHit {
  RayOutcome outcome = RayOutcome::not_crossed;
  /// Ordinate (vertical ray) or abscissa (horizontal ray) of the intersection, when one was computed.
  std::optional<double> at;
  bool solved = false;  ///< an intersection equation was solved
};

struct CrossState {
  std::int32_t crossings = 0;
  bool dubious = false;
  bool boundary_hit = false;
};

enum class Axis : std::uint8_t { vertical, horizontal };

/// Half-open coverage rule: each box owns the parameter range [s0, s1), so a
/// ray through a shared box endpoint is counted by exactly one box.
bool owns_abscissa(const MonotoneBox& box, double x);
bool owns_ordinate(const MonotoneBox& box, double y);

/// Boxes met by the downward ray from p: xmin <= x <= xmax and y >= ymin - y_slack.
/// Binary search over the xmin-sorted boxes plus the running max of xmax, then a linear filter.
std::vector<std::uint32_t> candidate_boxes(Point2 p, const Geometry& g, double y_slack = 0.0);
/// Boxes met by the leftward ray from p: ymin <= y <= ymax and x >= xmin - x_slack.
std::vector<std::uint32_t> candidate_boxes_horizontal(Point2 p, const Geometry& g, double x_slack = 0.0);

/// Intersection of the downward ray from p with the boundary portion of one box.
RayHit vertical_ray_count(Point2 p, std::uint32_t box, const Geometry& g, double boundary_tol);
/// Intersection of the leftward ray from p with the boundary portion of one box.
RayHit horizontal_ray_count(Point2 p, std::uint32_t box, const Geometry& g, double boundary_tol);

/// True when `coord` lies within `tol` of a critical abscissa/ordinate.
bool detect_critical(double coord, std::span<const double> critical, double tol);

/// Full ray pass for one point along one axis, scanning candidate boxes by binary search.
CrossState ray_pass(Point2 p, const Geometry& g, Axis axis, const Tolerances& tol, ClassifyStats* stats = nullptr);

/// Horizontal-ray pass over a list of (dubious) points.
std::vector<CrossState> horizontal_ray_pass(std::span<const Point2> points, const Geometry& g,
                                            const ClassifyOptions& opts = {});

struct WindingResult {
  int value = 0;      ///< rounded, orientation-corrected
  double raw = 0.0;   ///< orientation-corrected integral / (2 pi)
  bool converged = true;
};

/// Winding number of the boundary about p by adaptive Gauss-Legendre
/// quadrature over every piece. p must not lie on the boundary.
WindingResult winding_number(Point2 p, const Geometry& g, int quad_order = 16, int max_depth = 30,
                             const kernels::KernelTable* kernels = nullptr);

/// Parity rule for crossing-resolved points, winding value for the rest.
Label finalize(const CrossState& state, std::optional<int> winding, bool report_boundary);
std::vector<Label> finalize(std::span<const CrossState> states, std::span<const std::optional<int>> winding,
                            bool report_boundary);

/// Sorted-cloud classifier: points are ordered by x and every box finds its
/// points by binary search; dubious points fall back to the horizontal ray and
/// then to the winding number. Labels come back in input order.
std::vector<Label> classify_batch(std::span<const Point2> cloud, const Geometry& g, const ClassifyOptions& opts = {},
                                  ClassifyStats* stats = nullptr);

/// Reference per-point classifier: every point scans every box. Same labels
/// as classify_batch, O(M N) work.
std::vector<Label> classify_per_point(std::span<const Point2> cloud, const Geometry& g,
                                      const ClassifyOptions& opts = {}, ClassifyStats* stats = nullptr);

Label classify_point(Point2 p, const Geometry& g, const ClassifyOptions& opts = {});

/// Stable ascending order of `keys`: bucket sort over the key range with a
/// comparison sort inside each bucket.
std::vector<std::uint32_t> sort_permutation(std::span<const double> keys);

/// Points of the cloud inside `box`, ordered by x with ties in input order.
struct SortedCloud {
  std::vector<double> xs, ys;
  std::vector<std::uint32_t> origin;  ///< input index of each sorted point
};
SortedCloud sort_cloud(std::span<const Point2> cloud, const Rect& box);
/// Same, reusing the capacity of `out`.
void sort_cloud(std::span<const Point2> cloud, const Rect& box, SortedCloud& out);

}  // namespace inrs
