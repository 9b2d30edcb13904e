#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "inrs/curve_model.hpp"
#include "inrs/domains.hpp"

using namespace inrs;

namespace {

NurbsSide reversed(const NurbsSide& s) {
  NurbsSide r = s;
  std::reverse(r.control_points.begin(), r.control_points.end());
  std::reverse(r.weights.begin(), r.weights.end());
  const double a = s.knots.front(), b = s.knots.back();
  for (std::size_t i = 0; i < s.knots.size(); ++i) r.knots[i] = a + b - s.knots[s.knots.size() - 1 - i];
  return r;
}

}  // namespace

TEST(Basis, EndpointInterpolation) {
  const std::vector<double> k{0, 0, 0, 1, 1, 1};
  const BasisValues b = eval_basis(k, 2, 0.0);
  ASSERT_EQ(b.values.size(), 3u);
  EXPECT_DOUBLE_EQ(b.values[0], 1.0);
  EXPECT_DOUBLE_EQ(b.values[1], 0.0);
  EXPECT_DOUBLE_EQ(b.values[2], 0.0);
}

TEST(Basis, BernsteinAtMidpoint) {
  const std::vector<double> k{0, 0, 0, 1, 1, 1};
  const BasisValues b = eval_basis(k, 2, 0.5);
  EXPECT_DOUBLE_EQ(b.values[0], 0.25);
  EXPECT_DOUBLE_EQ(b.values[1], 0.5);
  EXPECT_DOUBLE_EQ(b.values[2], 0.25);
}

TEST(Basis, PartitionOfUnity) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> deg(1, 5), inner(0, 6);
  for (int t = 0; t < 10000; ++t) {
    const int p = deg(rng);
    std::vector<double> k(static_cast<std::size_t>(p + 1), 0.0);
    std::vector<double> in(static_cast<std::size_t>(inner(rng)));
    for (double& x : in) x = u(rng);
    std::sort(in.begin(), in.end());
    k.insert(k.end(), in.begin(), in.end());
    k.insert(k.end(), static_cast<std::size_t>(p + 1), 1.0);
    const BasisValues b = eval_basis(k, p, u(rng));
    double sum = 0;
    for (double v : b.values) sum += v;
    ASSERT_NEAR(sum, 1.0, 1e-14);
  }
}

TEST(Basis, OutsideRangeThrows) {
  const std::vector<double> k{0, 0, 1, 1};
  EXPECT_THROW(find_span(k, 1, 1.5), std::domain_error);
  EXPECT_THROW(find_span(k, 1, -0.1), std::domain_error);
}

TEST(Curve, CircleStartAndUnitRadius) {
  const BoundaryCurve c = builtin_domain("circle");
  const NurbsSide& s = c.sides()[0];
  EXPECT_EQ(eval_curve(s, s.t_begin()), (Point2{1.0, 0.0}));
  for (int i = 0; i <= 1000; ++i) {
    const Point2 p = eval_curve(s, i / 1000.0);
    ASSERT_NEAR(norm(p), 1.0, 1e-12);
  }
}

TEST(Curve, SegmentMidpoint) {
  const NurbsSide s = segment_side({0, 0}, {1, 0});
  EXPECT_EQ(eval_curve(s, 0.5), (Point2{0.5, 0.0}));
  EXPECT_THROW(eval_curve(s, 1.5), std::domain_error);
}

TEST(Curve, WeightScaleInvariance) {
  const BoundaryCurve c = builtin_domain("multispan");
  NurbsSide s = c.sides()[0];
  NurbsSide scaled = s;
  for (double& w : scaled.weights) w *= 10.0;
  for (int i = 0; i <= 200; ++i) {
    const double t = i / 200.0;
    const Point2 a = eval_curve(s, t), b = eval_curve(scaled, t);
    EXPECT_NEAR(a.x, b.x, 1e-13);
    EXPECT_NEAR(a.y, b.y, 1e-13);
  }
}

TEST(Curve, OrientationDetected) {
  const BoundaryCurve c = builtin_domain("circle");
  EXPECT_EQ(c.orientation(), Orientation::counterclockwise);
  const BoundaryCurve cw({reversed(c.sides()[0])});
  EXPECT_EQ(cw.orientation(), Orientation::clockwise);
}

TEST(Curve, OpenCurveRejected) {
  NurbsSide s = builtin_domain("circle").sides()[0];
  s.control_points.back().x += 1.0;
  try {
    BoundaryCurve bad({s});
    FAIL() << "expected a validation error";
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.kind(), GeometryError::Kind::open_curve);
  }
}

TEST(Curve, NonPositiveWeightRejected) {
  NurbsSide s = builtin_domain("circle").sides()[0];
  s.weights[1] = 0.0;
  try {
    BoundaryCurve bad({s});
    FAIL() << "expected a validation error";
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.kind(), GeometryError::Kind::non_positive_weight);
  }
}

TEST(Curve, NonAbuttingSidesRejected) {
  try {
    BoundaryCurve bad({segment_side({0, 0}, {1, 0}), segment_side({1, 0.5}, {0, 0})});
    FAIL() << "expected a validation error";
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.kind(), GeometryError::Kind::non_abutting_sides);
  }
}

TEST(Curve, KnotCountMismatchRejected) {
  NurbsSide s = segment_side({0, 0}, {1, 0});
  s.knots.push_back(1.0);
  EXPECT_THROW(validate_side(s, 0), GeometryError);
}

TEST(Curve, GlobalParameterGluing) {
  const BoundaryCurve c = builtin_domain("mixed");
  EXPECT_EQ(c.t_max(), 3.0);
  const auto [side, local] = c.to_local(1.5);
  EXPECT_EQ(side, 1);
  EXPECT_DOUBLE_EQ(local, 0.5);
  const Point2 p = c.eval(1.5);
  EXPECT_NEAR(p.x, -0.5, 1e-15);
  EXPECT_NEAR(p.y, 1.0, 1e-15);
}

TEST(Pieces, SegmentGivesLinearPiece) {
  const std::vector<Point2> v{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const auto pieces = extract_pieces(polygon_boundary(v));
  ASSERT_EQ(pieces.size(), 4u);
  EXPECT_LE(pieces[0].u.degree(), 1);
  EXPECT_LE(pieces[0].w.degree(), 1);
  EXPECT_LE(pieces[0].v.degree(), 0);
  EXPECT_NEAR(pieces[0].v(0.3), 1.0, 1e-15);
}

TEST(Pieces, CircleQuarterArcs) {
  const BoundaryCurve c = builtin_domain("circle");
  const auto pieces = extract_pieces(c);
  ASSERT_EQ(pieces.size(), 4u);
  for (const auto& pc : pieces)
    for (int i = 0; i <= 100; ++i) {
      const double s = i / 100.0;
      const Point2 ref = c.eval(pc.global_t(s));
      ASSERT_NEAR(pc.alpha(s), ref.x, 1e-12);
      ASSERT_NEAR(pc.beta(s), ref.y, 1e-12);
    }
}

TEST(Pieces, PolynomialCubicHasUnitDenominators) {
  NurbsSide s;
  s.degree = 3;
  s.knots = {0, 0, 0, 0, 1.0 / 3, 2.0 / 3, 1, 1, 1, 1};
  s.control_points = {{0, 0}, {1, -1}, {2, 0}, {2, 2}, {0, 2}, {0, 0}};
  s.weights.assign(6, 1.0);
  const auto pieces = extract_pieces(BoundaryCurve({s}));
  ASSERT_EQ(pieces.size(), 3u);
  for (const auto& pc : pieces) {
    EXPECT_NEAR(pc.v(0.4), 1.0, 1e-14);
    EXPECT_NEAR(pc.z(0.4), 1.0, 1e-14);
  }
}

TEST(Pieces, FidelityOnEveryBuiltin) {
  for (const auto& name : builtin_domain_names()) {
    const BoundaryCurve c = builtin_domain(name);
    for (const auto& pc : extract_pieces(c))
      for (int i = 0; i <= 100; ++i) {
        const double s = i / 100.0;
        const Point2 ref = c.eval(pc.global_t(s));
        ASSERT_LE(std::abs(pc.alpha(s) - ref.x), 1e-10 * (1 + std::abs(ref.x))) << name;
        ASSERT_LE(std::abs(pc.beta(s) - ref.y), 1e-10 * (1 + std::abs(ref.y))) << name;
      }
  }
}

TEST(Pieces, SignedAreaOfSquare) {
  const std::vector<Point2> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  EXPECT_DOUBLE_EQ(signed_area(sq), 1.0);
}

TEST(Pieces, ArcSideIsOnCircle) {
  const NurbsSide s = arc_side({0, -2}, 1.0, 0.0, std::numbers::pi);
  for (int i = 0; i <= 100; ++i) {
    const Point2 p = eval_curve(s, i / 100.0);
    ASSERT_NEAR(std::hypot(p.x, p.y + 2.0), 1.0, 1e-13);
  }
}
