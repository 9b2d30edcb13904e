#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "inrs/poly_roots.hpp"
#include "inrs/polynomial.hpp"

using namespace inrs;

TEST(Polynomial, HornerAndDerivative) {
  const Polynomial p{1.0, -2.0, 3.0};  // 1 - 2s + 3s^2
  EXPECT_DOUBLE_EQ(p(2.0), 9.0);
  double v = 0, d = 0;
  p.eval_with_derivative(2.0, v, d);
  EXPECT_DOUBLE_EQ(v, 9.0);
  EXPECT_DOUBLE_EQ(d, 10.0);
  EXPECT_EQ(p.derivative(), (Polynomial{-2.0, 6.0}));
}

TEST(Polynomial, Arithmetic) {
  const Polynomial a{1.0, 1.0}, b{-1.0, 1.0};
  EXPECT_EQ(a * b, (Polynomial{-1.0, 0.0, 1.0}));
  EXPECT_EQ(a + b, (Polynomial{0.0, 2.0}));
  EXPECT_EQ(a - b, (Polynomial{2.0, 0.0}));
  EXPECT_EQ(2.0 * a, (Polynomial{2.0, 2.0}));
  const std::vector<double> r{0.5, 2.0};
  EXPECT_EQ(Polynomial::from_roots(r), (Polynomial{1.0, -2.5, 1.0}));
}

TEST(Polynomial, QuotientDerivativeNumerator) {
  // (s / (1 + s))' = 1 / (1 + s)^2
  const Polynomial n = quotient_derivative_numerator(Polynomial{0.0, 1.0}, Polynomial{1.0, 1.0});
  EXPECT_DOUBLE_EQ(n(0.3), 1.0);
  EXPECT_DOUBLE_EQ(n(0.9), 1.0);
}

TEST(Polynomial, DeflationDropsTinyLeading) {
  const Polynomial p{1.0, 2.0, 1e-20};
  EXPECT_EQ(p.deflated(1e-14).degree(), 1);
  EXPECT_EQ(p.deflated(0.0).degree(), 2);
}

TEST(PolyRoots, SquareMinusQuarter) {
  const RootSet rs = real_roots_in_interval(Polynomial{-0.25, 0.0, 1.0}, 0.0, 1.0);
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_NEAR(rs.roots[0].value, 0.5, 1e-14);
}

TEST(PolyRoots, CubicWithRootOutside) {
  const std::vector<double> planted{0.3, 0.7, 2.0};
  const Polynomial p = Polynomial::from_roots(planted);
  const RootSet rs = real_roots_in_interval(p, 0.0, 1.0);
  ASSERT_EQ(rs.size(), 2u);
  EXPECT_NEAR(rs.roots[0].value, 0.3, 1e-12);
  EXPECT_NEAR(rs.roots[1].value, 0.7, 1e-12);
  for (const Root& r : rs.roots) EXPECT_LE(std::abs(p(r.value)), 1e-12);
}

TEST(PolyRoots, ConstantHasNoRoots) {
  const RootSet rs = real_roots_in_interval(Polynomial::constant(3.7), 0.0, 1.0);
  EXPECT_TRUE(rs.empty());
  EXPECT_FALSE(rs.identically_zero);
}

TEST(PolyRoots, ZeroPolynomialIsFlagged) {
  const RootSet rs = real_roots_in_interval(Polynomial{0.0, 0.0}, 0.0, 1.0);
  EXPECT_TRUE(rs.identically_zero);
  EXPECT_TRUE(rs.empty());
  EXPECT_TRUE(real_roots_in_interval(Polynomial{}, 0.0, 1.0).identically_zero);
}

TEST(PolyRoots, DoubleRootMerged) {
  const RootSet rs = real_roots_in_interval(Polynomial{0.25, -1.0, 1.0}, 0.0, 1.0);
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_NEAR(rs.roots[0].value, 0.5, 1e-7);
  EXPECT_EQ(rs.roots[0].multiplicity, 2);
}

TEST(PolyRoots, EndpointRootsClamped) {
  const std::vector<double> planted{0.0, 1.0};
  const RootSet rs = real_roots_in_interval(Polynomial::from_roots(planted), 0.0, 1.0);
  ASSERT_EQ(rs.size(), 2u);
  EXPECT_EQ(rs.roots[0].value, 0.0);
  EXPECT_EQ(rs.roots[1].value, 1.0);
}

TEST(PolyRoots, ScaleInvariantForPowersOfTwo) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-0.2, 1.2);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> planted(5);
    for (double& r : planted) r = u(rng);
    const Polynomial p = Polynomial::from_roots(planted);
    const auto a = real_roots_in_interval(p, 0.0, 1.0).values();
    const auto b = real_roots_in_interval(0.25 * p, 0.0, 1.0).values();
    const auto c = real_roots_in_interval(-8.0 * p, 0.0, 1.0).values();
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, c);
  }
}

TEST(PolyRoots, ScaleInvariantForArbitraryFactor) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-0.2, 1.2);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> planted(4);
    for (double& r : planted) r = u(rng);
    const Polynomial p = Polynomial::from_roots(planted);
    const auto a = real_roots_in_interval(p, 0.0, 1.0).values();
    const auto b = real_roots_in_interval(3.7 * p, 0.0, 1.0).values();
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-10);
  }
}

TEST(PolyRoots, DeflationMatchesDeflatedSolve) {
  const std::vector<double> planted{0.2, 0.6};
  const Polynomial clean = Polynomial::from_roots(planted);
  std::vector<double> c(clean.coeffs().begin(), clean.coeffs().end());
  c.push_back(1e-17);
  const Polynomial noisy(c);
  EXPECT_EQ(real_roots_in_interval(noisy, 0.0, 1.0).values(),
            real_roots_in_interval(noisy.deflated(1e-14), 0.0, 1.0).values());
}

TEST(PolyRoots, CompanionRootsOfCubic) {
  const std::vector<double> planted{-1.0, 2.0, 3.0};
  auto roots = companion_roots(Polynomial::from_roots(planted).coeffs());
  ASSERT_EQ(roots.size(), 3u);
  std::sort(roots.begin(), roots.end(), [](auto a, auto b) { return a.real() < b.real(); });
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(roots[i].real(), planted[i], 1e-12);
    EXPECT_NEAR(roots[i].imag(), 0.0, 1e-12);
  }
}

TEST(PolyRoots, ComplexPairIgnored) {
  // s^2 + 1 has no real roots
  EXPECT_TRUE(real_roots_in_interval(Polynomial{1.0, 0.0, 1.0}, -2.0, 2.0).empty());
}
