#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "inrs/domains.hpp"
#include "inrs/kernels.hpp"
#include "inrs/monotone_boxes.hpp"

using namespace inrs;
using namespace inrs::kernels;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

// Every usable variant other than the scalar reference.
std::vector<const KernelTable*> variants() {
  std::vector<const KernelTable*> v;
  for (Isa isa : available_isas())
    if (isa != Isa::scalar) v.push_back(&table(isa));
  return v;
}

RationalView view_of(const Geometry& g, std::size_t i) {
  const auto& pc = g.pieces()[i];
  const auto& d = g.derivs()[i];
  return {pc.u.coeffs(), pc.v.coeffs(), pc.w.coeffs(), pc.z.coeffs(),
          d.du.coeffs(), d.dv.coeffs(), d.dw.coeffs(), d.dz.coeffs()};
}

// Sizes that cover empty input, partial vectors and tails.
const std::size_t kSizes[] = {0, 1, 3, 4, 5, 7, 8, 9, 31, 64, 257};

}  // namespace

TEST(Kernels, ScalarAlwaysAvailable) {
  EXPECT_EQ(scalar_table().isa, Isa::scalar);
  EXPECT_TRUE(cpu_supports(Isa::scalar));
  EXPECT_EQ(&table(Isa::scalar), &scalar_table());
  if (!cpu_supports(Isa::avx2)) EXPECT_THROW(table(Isa::avx2), std::runtime_error);
}

TEST(Kernels, ScalarHornerReference) {
  const std::vector<double> c{1.0, -2.0, 3.0};
  const double s[] = {0.0, 0.5, 2.0};
  double out[3];
  scalar_table().horner(c, s, out, 3);
  EXPECT_EQ(out[0], 1.0);
  EXPECT_EQ(out[1], 0.75);
  EXPECT_EQ(out[2], 9.0);
}

TEST(Kernels, ScalarBoxSweepReference) {
  const double ys[] = {0.0, 1.0, 2.0, 3.0, 0.5};
  std::int32_t counts[5] = {};
  std::uint32_t band[5];
  const std::size_t k = scalar_table().box_sweep(ys, 5, 0.5, 2.0, counts, band);
  ASSERT_EQ(k, 3u);
  EXPECT_EQ(band[0], 1u);
  EXPECT_EQ(band[1], 2u);
  EXPECT_EQ(band[2], 4u);
  EXPECT_EQ(counts[3], 1);
  EXPECT_EQ(counts[0] + counts[1] + counts[2] + counts[4], 0);
}

TEST(Kernels, ScalarMonotoneSolveOnCircle) {
  const Geometry g = build_boxes(builtin_domain("circle"), 1);
  for (std::size_t i = 0; i < g.pieces().size(); ++i) {
    const auto& pc = g.pieces()[i];
    const double x0 = pc.alpha(0.0), x1 = pc.alpha(1.0);
    std::vector<double> xs;
    for (int k = 1; k < 20; ++k) xs.push_back(x0 + (x1 - x0) * k / 20.0);
    std::vector<double> s(xs.size()), beta(xs.size());
    std::vector<std::uint8_t> ok(xs.size());
    scalar_table().monotone_solve(view_of(g, i), 0.0, 1.0, xs.data(), xs.size(), s.data(), beta.data(), ok.data());
    for (std::size_t k = 0; k < xs.size(); ++k) {
      ASSERT_TRUE(ok[k]);
      EXPECT_NEAR(pc.alpha(s[k]), xs[k], 1e-13);
      EXPECT_NEAR(std::hypot(xs[k], beta[k]), 1.0, 1e-13);
    }
  }
}

TEST(Kernels, ScalarMonotoneSolveRejectsUnbracketed) {
  const Geometry g = build_boxes(builtin_domain("circle"), 1);
  const double xs[] = {5.0};
  double s, beta;
  std::uint8_t ok = 1;
  scalar_table().monotone_solve(view_of(g, 0), 0.0, 1.0, xs, 1, &s, &beta, &ok);
  EXPECT_EQ(ok, 0);
}

TEST(Kernels, ScalarPolygonReference) {
  const double x0[] = {0, 1, 1, 0}, y0[] = {0, 0, 1, 1}, x1[] = {1, 1, 0, 0}, y1[] = {0, 1, 1, 0};
  const SegmentView sq{x0, y0, x1, y1, 4};
  EXPECT_EQ(scalar_table().polygon_crossings(sq, 0.5, 0.5), 1u);
  EXPECT_EQ(scalar_table().polygon_crossings(sq, -0.5, 0.5), 2u);
  EXPECT_DOUBLE_EQ(scalar_table().min_distance_sq(sq, 0.5, 0.25), 0.0625);
  EXPECT_TRUE(std::isinf(scalar_table().min_distance_sq(SegmentView{}, 0.0, 0.0)));
}

TEST(KernelEquivalence, Horner) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (const KernelTable* k : variants())
    for (int deg : {0, 1, 2, 5, 9})
      for (std::size_t n : kSizes) {
        std::vector<double> c(static_cast<std::size_t>(deg + 1)), s(n), a(n), b(n);
        for (double& x : c) x = u(rng);
        for (double& x : s) x = u(rng);
        scalar_table().horner(c, s.data(), a.data(), n);
        k->horner(c, s.data(), b.data(), n);
        for (std::size_t i = 0; i < n; ++i) ASSERT_TRUE(same_bits(a[i], b[i])) << isa_name(k->isa) << " deg " << deg;
      }
}

TEST(KernelEquivalence, WindingIntegrand) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(0.0, 1.0), p(-1.5, 1.5);
  for (const auto& name : builtin_domain_names()) {
    const Geometry g = build_boxes(builtin_domain(name), 2);
    for (const KernelTable* k : variants())
      for (std::size_t i = 0; i < g.pieces().size(); ++i)
        for (std::size_t n : kSizes) {
          std::vector<double> s(n), a(n), b(n);
          for (double& x : s) x = u(rng);
          const double px = p(rng), py = p(rng);
          scalar_table().winding_integrand(view_of(g, i), s.data(), n, px, py, a.data());
          k->winding_integrand(view_of(g, i), s.data(), n, px, py, b.data());
          for (std::size_t j = 0; j < n; ++j) ASSERT_TRUE(same_bits(a[j], b[j])) << name << " piece " << i;
        }
  }
}

TEST(KernelEquivalence, BoxSweep) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const KernelTable* k : variants())
    for (std::size_t n : kSizes) {
      std::vector<double> ys(n);
      for (double& y : ys) y = u(rng);
      if (n > 2) ys[1] = 0.25, ys[2] = -0.25;  // exactly on the band edges
      std::vector<std::int32_t> ca(n, 3), cb(n, 3);
      std::vector<std::uint32_t> ba(n + 1), bb(n + 1);
      const std::size_t ka = scalar_table().box_sweep(ys.data(), n, -0.25, 0.25, ca.data(), ba.data());
      const std::size_t kb = k->box_sweep(ys.data(), n, -0.25, 0.25, cb.data(), bb.data());
      ASSERT_EQ(ka, kb);
      EXPECT_EQ(ca, cb);
      for (std::size_t i = 0; i < ka; ++i) ASSERT_EQ(ba[i], bb[i]);
    }
}

TEST(KernelEquivalence, MonotoneSolve) {
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> u(-0.1, 1.1);
  for (const auto& name : builtin_domain_names()) {
    const Geometry g = build_boxes(builtin_domain(name), 4);
    for (const KernelTable* k : variants())
      for (const auto& b : g.boxes()) {
        if (b.x_constant()) continue;
        for (std::size_t n : kSizes) {
          std::vector<double> xs(n), sa(n), sb(n), ya(n), yb(n);
          std::vector<std::uint8_t> oa(n), ob(n);
          for (double& x : xs) x = b.start.x + (b.end.x - b.start.x) * u(rng);
          if (n > 1) xs[0] = b.end.x;
          scalar_table().monotone_solve(view_of(g, b.piece), b.s0, b.s1, xs.data(), n, sa.data(), ya.data(), oa.data());
          k->monotone_solve(view_of(g, b.piece), b.s0, b.s1, xs.data(), n, sb.data(), yb.data(), ob.data());
          ASSERT_EQ(oa, ob) << name;
          for (std::size_t i = 0; i < n; ++i) {
            if (!oa[i]) continue;
            ASSERT_TRUE(same_bits(sa[i], sb[i])) << name;
            ASSERT_TRUE(same_bits(ya[i], yb[i])) << name;
          }
        }
      }
  }
}

TEST(KernelEquivalence, PolygonKernels) {
  std::mt19937_64 rng(25);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const KernelTable* k : variants())
    for (std::size_t n : kSizes) {
      std::vector<double> x0(n), y0(n), x1(n), y1(n);
      for (std::size_t i = 0; i < n; ++i) {
        x0[i] = u(rng), y0[i] = u(rng), x1[i] = u(rng), y1[i] = u(rng);
        if (i % 5 == 0) y1[i] = y0[i];  // horizontal segments
      }
      const SegmentView sv{x0.data(), y0.data(), x1.data(), y1.data(), n};
      for (int q = 0; q < 50; ++q) {
        double px = u(rng), py = u(rng);
        if (q == 0 && n > 0) py = y0[0];  // through a vertex ordinate
        ASSERT_EQ(scalar_table().polygon_crossings(sv, px, py), k->polygon_crossings(sv, px, py));
        ASSERT_TRUE(same_bits(scalar_table().min_distance_sq(sv, px, py), k->min_distance_sq(sv, px, py)));
      }
    }
}
