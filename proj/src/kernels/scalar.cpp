#include <cmath>
#include <limits>

#include "inrs/kernels.hpp"

namespace inrs::kernels {

namespace {

inline double horner1(std::span<const double> c, double s) {
  if (c.empty()) return 0.0;
  double acc = c.back();
  for (std::size_t k = c.size() - 1; k-- > 0;) acc = acc * s + c[k];
  return acc;
}

void horner_scalar(std::span<const double> coeffs, const double* s, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = horner1(coeffs, s[i]);
}

void winding_scalar(const RationalView& p, const double* s, std::size_t n, double px, double py, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const double si = s[i];
    const double U = horner1(p.u, si), V = horner1(p.v, si);
    const double W = horner1(p.w, si), Z = horner1(p.z, si);
    const double dU = horner1(p.du, si), dV = horner1(p.dv, si);
    const double dW = horner1(p.dw, si), dZ = horner1(p.dz, si);
    const double ex = U / V - px;
    const double ey = W / Z - py;
    const double ax = (dU * V - U * dV) / (V * V);
    const double by = (dW * Z - W * dZ) / (Z * Z);
    out[i] = (by * ex - ax * ey) / (ex * ex + ey * ey);
  }
}

std::size_t sweep_scalar(const double* ys, std::size_t n, double lo, double hi, std::int32_t* counts,
                         std::uint32_t* band) {
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double y = ys[i];
    if (y > hi) {
      counts[i] += 1;
    } else if (y >= lo) {
      band[k++] = static_cast<std::uint32_t>(i);
    }
  }
  return k;
}

void solve_scalar(const RationalView& p, double s0, double s1, const double* xs, std::size_t n, double* s_out,
                  double* beta_out, std::uint8_t* ok) {
  const double u0 = horner1(p.u, s0), v0 = horner1(p.v, s0);
  const double u1 = horner1(p.u, s1), v1 = horner1(p.v, s1);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = xs[i];
    const double fa = u0 - x * v0;
    const double fb = u1 - x * v1;
    const bool pos_lo = fa > 0.0;
    const bool good = (pos_lo != (fb > 0.0)) || fa == 0.0 || fb == 0.0;
    double lo = s0, hi = s1;
    double s = lo + (hi - lo) * (fa / (fa - fb));
    s = fa == 0.0 ? s0 : s;
    s = fb == 0.0 ? s1 : s;
    bool done = !good || fa == 0.0 || fb == 0.0;
    for (int it = 0; it < kMonotoneSolveMaxIter && !done; ++it) {
      const double f = horner1(p.u, s) - x * horner1(p.v, s);
      const double d = horner1(p.du, s) - x * horner1(p.dv, s);
      if (f == 0.0) {
        done = true;
        break;
      }
      if ((f > 0.0) == pos_lo)
        lo = s;
      else
        hi = s;
      double sn = s - f / d;
      if (!(sn > lo && sn < hi)) sn = 0.5 * (lo + hi);
      const double step = std::abs(sn - s);
      s = sn;
      done = step <= kMonotoneSolveStep;
    }
    s_out[i] = s;
    beta_out[i] = horner1(p.w, s) / horner1(p.z, s);
    ok[i] = static_cast<std::uint8_t>(good && done);
  }
}

std::uint32_t crossings_scalar(const SegmentView& g, double px, double py) {
  std::uint32_t count = 0;
  for (std::size_t i = 0; i < g.n; ++i) {
    const bool a = g.y0[i] > py;
    const bool b = g.y1[i] > py;
    if (a == b) continue;
    const double xint = (g.x1[i] - g.x0[i]) * (py - g.y0[i]) / (g.y1[i] - g.y0[i]) + g.x0[i];
    if (px < xint) ++count;
  }
  return count;
}

double distance_scalar(const SegmentView& g, double px, double py) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < g.n; ++i) {
    const double dx = g.x1[i] - g.x0[i];
    const double dy = g.y1[i] - g.y0[i];
    const double len2 = dx * dx + dy * dy;
    double t = 0.0;
    if (len2 > 0.0) {
      t = ((px - g.x0[i]) * dx + (py - g.y0[i]) * dy) / len2;
      t = t < 1.0 ? t : 1.0;
      t = t > 0.0 ? t : 0.0;
    }
    const double ex = px - (g.x0[i] + t * dx);
    const double ey = py - (g.y0[i] + t * dy);
    const double d2 = ex * ex + ey * ey;
    best = d2 < best ? d2 : best;
  }
  return best;
}

constexpr KernelTable kScalar{
    Isa::scalar, &horner_scalar, &winding_scalar, &sweep_scalar, &solve_scalar, &crossings_scalar, &distance_scalar,
};

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

}  // namespace inrs::kernels
