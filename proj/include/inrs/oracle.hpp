#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "inrs/classifier.hpp"
#include "inrs/curve_model.hpp"
#include "inrs/kernels.hpp"

namespace inrs {

/// Closed polyline approximating a boundary; the last vertex connects back to the first.
struct PolygonApprox {
  std::vector<Point2> vertices;
  double tolerance = 0.0;
};

inline constexpr std::size_t kMaxPolygonVertices = 100'000'000;

/// Adaptive flattening: every knot span is cut until the curve stays within
/// eps of each chord at the quarter points. Throws std::length_error past max_vertices.
PolygonApprox polygonize(const BoundaryCurve& curve, double eps, std::size_t max_vertices = kMaxPolygonVertices);

/// Classical even-odd test with a rightward ray, half-open in y. 1 inside, 0 outside.
int point_in_polygon(Point2 p, std::span<const Point2> polygon);

/// Point-in-polygon over a dense polygon with a uniform slab grid in y.
class PolygonOracle {
 public:
  explicit PolygonOracle(std::span<const Point2> polygon, const kernels::KernelTable* kernels = nullptr);

  int classify(Point2 p) const;
  std::vector<std::uint8_t> classify(std::span<const Point2> pts) const;
  /// Distance to the polyline, exact when it is below `cutoff`; otherwise some value >= cutoff.
  double distance(Point2 p, double cutoff) const;
  std::size_t vertex_count() const { return n_; }

 private:
  struct Slab {
    std::vector<double> x0, y0, x1, y1;
    kernels::SegmentView view() const { return {x0.data(), y0.data(), x1.data(), y1.data(), x0.size()}; }
  };
  std::size_t slab_of(double y) const;

  const kernels::KernelTable* k_;
  std::size_t n_ = 0;
  double ymin_ = 0.0, ymax_ = 0.0, inv_h_ = 0.0;
  std::vector<Slab> slabs_;
};

struct AgreementReport {
  std::size_t points = 0;
  std::size_t agree = 0;
  std::size_t disagree_in_band = 0;   ///< disagreements within `band` of the polyline
  std::size_t disagree_outside_band = 0;
  std::vector<std::size_t> bad;       ///< indices disagreeing outside the band

  bool ok() const { return disagree_outside_band == 0; }
};

/// Label::boundary counts as inside.
AgreementReport compare_with_oracle(std::span<const Point2> pts, std::span<const Label> labels,
                                    const PolygonOracle& oracle, double band);

}  // namespace inrs
