#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "inrs/bench.hpp"
#include "inrs/domains.hpp"
#include "inrs/io.hpp"
#include "inrs/oracle.hpp"

using namespace inrs;

TEST(PointInPolygon, UnitSquare) {
  const std::vector<Point2> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  EXPECT_EQ(point_in_polygon({0.5, 0.5}, sq), 1);
  EXPECT_EQ(point_in_polygon({1.5, 0.5}, sq), 0);
  EXPECT_EQ(point_in_polygon({0.5, -0.5}, sq), 0);
}

TEST(Polygonize, CircleDeviation) {
  const PolygonApprox p = polygonize(builtin_domain("circle"), 1e-4);
  const auto& v = p.vertices;
  ASSERT_GT(v.size(), 8u);
  // Chord midpoints sit inside the circle by the sagitta.
  double worst = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2 a = v[i], b = v[(i + 1) % v.size()];
    for (int k = 1; k < 10; ++k) {
      const Point2 m = a + (k / 10.0) * (b - a);
      worst = std::max(worst, 1.0 - norm(m));
    }
  }
  EXPECT_LE(worst, 1e-4);
  for (Point2 q : v) EXPECT_NEAR(norm(q), 1.0, 1e-14);
}

TEST(Polygonize, SquareIsExact) {
  for (double eps : {1e-2, 1e-6, 1e-10}) EXPECT_EQ(polygonize(builtin_domain("square"), eps).vertices.size(), 4u);
}

TEST(Polygonize, CapEnforced) {
  EXPECT_THROW(polygonize(builtin_domain("circle"), 1e-10, 1000), std::length_error);
  EXPECT_THROW(polygonize(builtin_domain("circle"), 0.0), std::invalid_argument);
}

TEST(Polygonize, InverseSqrtScaling) {
  const double n4 = static_cast<double>(polygonize(builtin_domain("circle"), 1e-4).vertices.size());
  const double n8 = static_cast<double>(polygonize(builtin_domain("circle"), 1e-8).vertices.size());
  EXPECT_NEAR(n8 / n4, 100.0, 20.0);
}

TEST(Oracle, DenseCircle) {
  const PolygonApprox p = polygonize(builtin_domain("circle"), 1e-8);
  const PolygonOracle o(p.vertices);
  EXPECT_EQ(o.classify({0.3, 0.2}), 1);
  EXPECT_EQ(o.classify({0.9, 0.5}), 0);
  EXPECT_EQ(o.classify({5.0, 0.0}), 0);
  EXPECT_NEAR(o.distance({0.0, 0.0}, 2.0), 1.0, 1e-8);
  EXPECT_GE(o.distance({0.0, 0.0}, 0.1), 0.1);
}

TEST(Oracle, MatchesPlainLoop) {
  const PolygonApprox p = polygonize(builtin_domain("multispan"), 1e-5);
  const PolygonOracle o(p.vertices);
  for (Point2 q : halton(5000, Rect{-1.3, 1.3, -1.3, 1.3})) ASSERT_EQ(o.classify(q), point_in_polygon(q, p.vertices));
}

TEST(Oracle, CompareReport) {
  const std::vector<Point2> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const PolygonOracle o(sq);
  const std::vector<Point2> pts{{0.5, 0.5}, {2, 2}, {0.5, 1e-9}};
  const std::vector<Label> labels{Label::inside, Label::inside, Label::outside};
  const AgreementReport r = compare_with_oracle(pts, labels, o, 1e-6);
  EXPECT_EQ(r.agree, 1u);
  EXPECT_EQ(r.disagree_outside_band, 1u);
  EXPECT_EQ(r.disagree_in_band, 1u);
  EXPECT_EQ(r.bad, (std::vector<std::size_t>{1}));
  EXPECT_FALSE(r.ok());
}

TEST(Bench, Median) {
  EXPECT_EQ(median({3, 1, 2}), 2.0);
  EXPECT_EQ(median({4, 1, 2, 3}), 2.5);
}

TEST(Bench, SmallRunsProduceTables) {
  BenchOptions o;
  o.repetitions = 3;
  const std::vector<std::size_t> ms{500};
  const std::vector<int> taus{1, 4};
  const BoundaryCurve c = builtin_domain("circle");
  const auto rows = run_speedup_bench(c, ms, taus, o);
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.labels_equal);
    EXPECT_GT(r.naive_query_s, 0.0);
    EXPECT_GT(r.batch_query_s, 0.0);
  }
  const auto tau = run_tau_sweep(c, 500, taus, o);
  ASSERT_EQ(tau.size(), 2u);
  EXPECT_LE(tau[1].nu, tau[0].nu);
  const auto poly = run_polygon_comparison(c, ms, 1e-6, 1e-6, o);
  ASSERT_EQ(poly.size(), 1u);
  EXPECT_EQ(poly[0].disagree_outside_band, 0u);
  const std::string csv = bench_csv(rows, tau);
  EXPECT_EQ(csv.rfind("config,M,tau,build_s,query_s,nu,speedup\n", 0), 0u);
  EXPECT_NE(format_speedup_table(rows).find("circle"), std::string::npos);
}
