#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "inrs/domains.hpp"
#include "inrs/monotone_boxes.hpp"

using namespace inrs;

namespace {

BoundaryCurve unit_square() {
  const std::vector<Point2> v{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  return polygon_boundary(v, "unit square");
}

int sign(double v) { return (v > 0) - (v < 0); }

}  // namespace

TEST(SplitMonotone, QuarterArcNotSplit) {
  const auto pieces = extract_pieces(builtin_domain("circle"));
  for (const auto& pc : pieces) {
    const PieceAnalysis a = split_monotone(pc);
    EXPECT_EQ(a.breaks.size(), 2u);
  }
}

TEST(SplitMonotone, HorizontalSegmentHasConstantY) {
  const auto pieces = extract_pieces(unit_square());
  const PieceAnalysis a = split_monotone(pieces[0]);
  EXPECT_TRUE(a.y_constant);
  EXPECT_FALSE(a.x_constant);
  EXPECT_EQ(a.breaks.size(), 2u);
}

TEST(SplitMonotone, PolynomialHalfCircleSplitsAtYTurn) {
  // x = 2t - 1, y = 4 t (1 - t): x' never vanishes, y' vanishes once at t = 1/2.
  NurbsSide arc;
  arc.degree = 2;
  arc.knots = {0, 0, 0, 1, 1, 1};
  arc.control_points = {{-1, 0}, {0, 2}, {1, 0}};
  arc.weights = {1, 1, 1};
  const BoundaryCurve c({arc, segment_side({1, 0}, {-1, 0})});
  const auto pieces = extract_pieces(c);
  const PieceAnalysis a = split_monotone(pieces[0]);
  EXPECT_TRUE(a.x_tangency.empty());
  ASSERT_EQ(a.breaks.size(), 3u);
  EXPECT_NEAR(a.breaks[1], 0.5, 1e-12);
}

TEST(SplitMonotone, PointPieceRejected) {
  RationalPiece p;
  p.u = Polynomial{1.0};
  p.v = Polynomial{1.0};
  p.w = Polynomial{2.0};
  p.z = Polynomial{1.0};
  EXPECT_THROW(split_monotone(p), GeometryError);
}

TEST(Boxes, CircleQuadrants) {
  const Geometry g = build_boxes(builtin_domain("circle"), 1);
  ASSERT_EQ(g.boxes().size(), 4u);
  std::vector<Rect> rects;
  for (const auto& b : g.boxes()) {
    Rect r = b.rect;
    for (double* v : {&r.xmin, &r.xmax, &r.ymin, &r.ymax}) *v = std::round(*v * 1e9) / 1e9 + 0.0;
    rects.push_back(r);
  }
  const std::vector<Rect> want{{0, 1, 0, 1}, {-1, 0, 0, 1}, {-1, 0, -1, 0}, {0, 1, -1, 0}};
  for (const Rect& w : want) EXPECT_NE(std::find(rects.begin(), rects.end(), w), rects.end());
  EXPECT_NEAR(g.global_box().xmin, -1.0, 1e-15);
  EXPECT_NEAR(g.global_box().xmax, 1.0, 1e-15);
  EXPECT_NEAR(g.global_box().ymin, -1.0, 1e-15);
  EXPECT_NEAR(g.global_box().ymax, 1.0, 1e-15);
}

TEST(Boxes, CircleCriticalSet) {
  const Geometry g = build_boxes(builtin_domain("circle"), 1);
  const auto& xc = g.critical().x_critical;
  const auto& yc = g.critical().y_critical;
  ASSERT_EQ(xc.size(), 2u);
  ASSERT_EQ(yc.size(), 2u);
  EXPECT_NEAR(xc[0], -1.0, 1e-15);
  EXPECT_NEAR(xc[1], 1.0, 1e-15);
  EXPECT_NEAR(yc[0], -1.0, 1e-15);
  EXPECT_NEAR(yc[1], 1.0, 1e-15);
}

TEST(Boxes, SquareDegenerateBoxes) {
  const Geometry g = build_boxes(unit_square(), 1);
  ASSERT_EQ(g.boxes().size(), 4u);
  int vertical = 0, horizontal = 0;
  for (const auto& b : g.boxes()) {
    EXPECT_TRUE(b.degenerate());
    vertical += b.x_constant();
    horizontal += b.y_constant();
  }
  EXPECT_EQ(vertical, 2);
  EXPECT_EQ(horizontal, 2);
  EXPECT_EQ(g.critical().x_critical, (std::vector<double>{0.0, 1.0}));
}

TEST(Boxes, MixedHasCurvedAndDegenerate) {
  const Geometry g = build_boxes(builtin_domain("mixed"), 1);
  int degenerate = 0, curved = 0;
  for (const auto& b : g.boxes()) (b.degenerate() ? degenerate : curved)++;
  EXPECT_GT(degenerate, 0);
  EXPECT_GT(curved, 0);
}

TEST(Boxes, PacManCentreIsNotCritical) {
  // Arc from -45 to 225 degrees plus two radial segments through the centre:
  // the ray at the centre abscissa crosses there without touching.
  const double a0 = -std::numbers::pi / 4, a1 = 5 * std::numbers::pi / 4;
  const Point2 e0{std::cos(a0), std::sin(a0)}, e1{std::cos(a1), std::sin(a1)};
  const BoundaryCurve c({arc_side({0, 0}, 1.0, a0, a1), segment_side(e1, {0, 0}), segment_side({0, 0}, e0)});
  const Geometry g = build_boxes(c, 1);
  for (double x : g.critical().x_critical) EXPECT_GT(std::abs(x), 1e-6);
}

TEST(Boxes, RefinementCount) {
  for (int tau : {1, 2, 4, 16}) {
    const Geometry g = build_boxes(builtin_domain("circle"), tau);
    EXPECT_EQ(g.boxes().size(), static_cast<std::size_t>(4 * tau));
  }
}

TEST(Boxes, SortedWithPrefixMax) {
  const Geometry g = build_boxes(builtin_domain("multispan"), 4);
  const auto& b = g.boxes();
  double run = -INFINITY;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i > 0) EXPECT_LE(b[i - 1].rect.xmin, b[i].rect.xmin);
    run = std::max(run, b[i].rect.xmax);
    EXPECT_EQ(g.prefix_max_xmax()[i], run);
  }
}

class BoxInvariants : public ::testing::TestWithParam<std::string> {};

TEST_P(BoxInvariants, CoverageAndGlobalBox) {
  const BoundaryCurve c = builtin_domain(GetParam());
  const Geometry g = build_boxes(c, 4);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(c.t_min(), c.t_max());
  const Rect gb = g.global_box().inflated(1e-12);
  for (int i = 0; i < 10000; ++i) {
    const Point2 p = c.eval(u(rng));
    ASSERT_TRUE(gb.contains(p));
    bool covered = false;
    for (const auto& b : g.boxes()) covered = covered || b.rect.inflated(1e-12).contains(p);
    ASSERT_TRUE(covered) << p.x << "," << p.y;
  }
}

TEST_P(BoxInvariants, MonotoneGraph) {
  const Geometry g = build_boxes(builtin_domain(GetParam()), 4);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& b : g.boxes()) {
    const auto& pc = g.pieces()[b.piece];
    const int want_x = b.x_mono == Monotonicity::increasing ? 1 : b.x_mono == Monotonicity::decreasing ? -1 : 0;
    const int want_y = b.y_mono == Monotonicity::increasing ? 1 : b.y_mono == Monotonicity::decreasing ? -1 : 0;
    for (int k = 0; k < 10; ++k) {
      double s1 = b.s0 + (b.s1 - b.s0) * u(rng), s2 = b.s0 + (b.s1 - b.s0) * u(rng);
      if (s1 > s2) std::swap(s1, s2);
      if (s2 - s1 < 1e-6) continue;
      const double dx = pc.alpha(s2) - pc.alpha(s1), dy = pc.beta(s2) - pc.beta(s1);
      if (want_x != 0) EXPECT_EQ(sign(dx), want_x);
      else EXPECT_NEAR(dx, 0.0, 1e-12);
      if (want_y != 0) EXPECT_EQ(sign(dy), want_y);
      else EXPECT_NEAR(dy, 0.0, 1e-12);
    }
  }
}

TEST_P(BoxInvariants, ExtremaAtEndpoints) {
  const Geometry g = build_boxes(builtin_domain(GetParam()), 4);
  for (const auto& b : g.boxes()) {
    const auto& pc = g.pieces()[b.piece];
    const Point2 a = pc.point(b.s0), e = pc.point(b.s1);
    EXPECT_NEAR(b.rect.xmin, std::min(a.x, e.x), 1e-13);
    EXPECT_NEAR(b.rect.xmax, std::max(a.x, e.x), 1e-13);
    EXPECT_NEAR(b.rect.ymin, std::min(a.y, e.y), 1e-13);
    EXPECT_NEAR(b.rect.ymax, std::max(a.y, e.y), 1e-13);
  }
}

TEST_P(BoxInvariants, AreaNonIncreasingInRefinement) {
  const BoundaryCurve c = builtin_domain(GetParam());
  double prev = INFINITY;
  for (int tau : {1, 2, 4, 8, 16}) {
    const Geometry g = build_boxes(c, tau);
    double area = 0;
    for (const auto& b : g.boxes()) area += b.rect.width() * b.rect.height();
    EXPECT_LE(area, prev * (1 + 1e-12)) << "tau " << tau;
    prev = area;
  }
}

INSTANTIATE_TEST_SUITE_P(Builtins, BoxInvariants, ::testing::Values("circle", "square", "mixed", "multispan"));
