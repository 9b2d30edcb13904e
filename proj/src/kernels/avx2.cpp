// Compiled with -mavx2 only; reached exclusively through the dispatcher after a
// CPU feature check. No FMA: results must match the scalar kernels bitwise.

#include <immintrin.h>

#include <bit>
#include <cmath>
#include <limits>

#include "inrs/kernels.hpp"

namespace inrs::kernels {

namespace {

inline __m256d horner4(std::span<const double> c, __m256d s) {
  if (c.empty()) return _mm256_setzero_pd();
  __m256d acc = _mm256_set1_pd(c.back());
  for (std::size_t k = c.size() - 1; k-- > 0;)
    acc = _mm256_add_pd(_mm256_mul_pd(acc, s), _mm256_set1_pd(c[k]));
  return acc;
}

inline double horner1(std::span<const double> c, double s) {
  if (c.empty()) return 0.0;
  double acc = c.back();
  for (std::size_t k = c.size() - 1; k-- > 0;) acc = acc * s + c[k];
  return acc;
}

void horner_avx2(std::span<const double> coeffs, const double* s, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, horner4(coeffs, _mm256_loadu_pd(s + i)));
  for (; i < n; ++i) out[i] = horner1(coeffs, s[i]);
}

void winding_avx2(const RationalView& p, const double* s, std::size_t n, double px, double py, double* out) {
  const __m256d vpx = _mm256_set1_pd(px);
  const __m256d vpy = _mm256_set1_pd(py);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d si = _mm256_loadu_pd(s + i);
    const __m256d U = horner4(p.u, si), V = horner4(p.v, si);
    const __m256d W = horner4(p.w, si), Z = horner4(p.z, si);
    const __m256d dU = horner4(p.du, si), dV = horner4(p.dv, si);
    const __m256d dW = horner4(p.dw, si), dZ = horner4(p.dz, si);
    const __m256d ex = _mm256_sub_pd(_mm256_div_pd(U, V), vpx);
    const __m256d ey = _mm256_sub_pd(_mm256_div_pd(W, Z), vpy);
    const __m256d ax =
        _mm256_div_pd(_mm256_sub_pd(_mm256_mul_pd(dU, V), _mm256_mul_pd(U, dV)), _mm256_mul_pd(V, V));
    const __m256d by =
        _mm256_div_pd(_mm256_sub_pd(_mm256_mul_pd(dW, Z), _mm256_mul_pd(W, dZ)), _mm256_mul_pd(Z, Z));
    const __m256d num = _mm256_sub_pd(_mm256_mul_pd(by, ex), _mm256_mul_pd(ax, ey));
    const __m256d den = _mm256_add_pd(_mm256_mul_pd(ex, ex), _mm256_mul_pd(ey, ey));
    _mm256_storeu_pd(out + i, _mm256_div_pd(num, den));
  }
  for (; i < n; ++i) {
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

// Lane increments for a 4-bit "above" mask.
alignas(16) constexpr std::int32_t kIncrement[16][4] = {
    {0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 1, 0}, {1, 0, 1, 0}, {0, 1, 1, 0}, {1, 1, 1, 0},
    {0, 0, 0, 1}, {1, 0, 0, 1}, {0, 1, 0, 1}, {1, 1, 0, 1}, {0, 0, 1, 1}, {1, 0, 1, 1}, {0, 1, 1, 1}, {1, 1, 1, 1},
};

std::size_t sweep_avx2(const double* ys, std::size_t n, double lo, double hi, std::int32_t* counts,
                       std::uint32_t* band) {
  const __m256d vlo = _mm256_set1_pd(lo);
  const __m256d vhi = _mm256_set1_pd(hi);
  std::size_t k = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d y = _mm256_loadu_pd(ys + i);
    const int above = _mm256_movemask_pd(_mm256_cmp_pd(y, vhi, _CMP_GT_OQ));
    const int in_band =
        _mm256_movemask_pd(_mm256_and_pd(_mm256_cmp_pd(y, vlo, _CMP_GE_OQ), _mm256_cmp_pd(y, vhi, _CMP_LE_OQ)));
    if (above) {
      __m128i c = _mm_loadu_si128(reinterpret_cast<const __m128i*>(counts + i));
      c = _mm_add_epi32(c, _mm_load_si128(reinterpret_cast<const __m128i*>(kIncrement[above])));
      _mm_storeu_si128(reinterpret_cast<__m128i*>(counts + i), c);
    }
    unsigned bits = static_cast<unsigned>(in_band);
    while (bits) {
      const int lane = std::countr_zero(bits);
      band[k++] = static_cast<std::uint32_t>(i + lane);
      bits &= bits - 1;
    }
  }
  for (; i < n; ++i) {
    const double y = ys[i];
    if (y > hi) {
      counts[i] += 1;
    } else if (y >= lo) {
      band[k++] = static_cast<std::uint32_t>(i);
    }
  }
  return k;
}

void solve_avx2(const RationalView& p, double s0, double s1, const double* xs, std::size_t n, double* s_out,
                double* beta_out, std::uint8_t* ok) {
  const double u0 = horner1(p.u, s0), v0 = horner1(p.v, s0);
  const double u1 = horner1(p.u, s1), v1 = horner1(p.v, s1);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d tol = _mm256_set1_pd(kMonotoneSolveStep);
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  const __m256d vs0 = _mm256_set1_pd(s0), vs1 = _mm256_set1_pd(s1);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(xs + i);
    const __m256d fa = _mm256_sub_pd(_mm256_set1_pd(u0), _mm256_mul_pd(x, _mm256_set1_pd(v0)));
    const __m256d fb = _mm256_sub_pd(_mm256_set1_pd(u1), _mm256_mul_pd(x, _mm256_set1_pd(v1)));
    const __m256d pos_lo = _mm256_cmp_pd(fa, zero, _CMP_GT_OQ);
    const __m256d fa0 = _mm256_cmp_pd(fa, zero, _CMP_EQ_OQ);
    const __m256d fb0 = _mm256_cmp_pd(fb, zero, _CMP_EQ_OQ);
    const __m256d good = _mm256_or_pd(_mm256_xor_pd(pos_lo, _mm256_cmp_pd(fb, zero, _CMP_GT_OQ)),
                                      _mm256_or_pd(fa0, fb0));
    __m256d lo = vs0, hi = vs1;
    __m256d s = _mm256_add_pd(lo, _mm256_mul_pd(_mm256_sub_pd(hi, lo), _mm256_div_pd(fa, _mm256_sub_pd(fa, fb))));
    s = _mm256_blendv_pd(s, vs0, fa0);
    s = _mm256_blendv_pd(s, vs1, fb0);
    __m256d done = _mm256_or_pd(_mm256_andnot_pd(good, _mm256_castsi256_pd(_mm256_set1_epi64x(-1))),
                                _mm256_or_pd(fa0, fb0));
    for (int it = 0; it < kMonotoneSolveMaxIter && _mm256_movemask_pd(done) != 0xF; ++it) {
      const __m256d f = _mm256_sub_pd(horner4(p.u, s), _mm256_mul_pd(x, horner4(p.v, s)));
      const __m256d d = _mm256_sub_pd(horner4(p.du, s), _mm256_mul_pd(x, horner4(p.dv, s)));
      const __m256d f0 = _mm256_andnot_pd(done, _mm256_cmp_pd(f, zero, _CMP_EQ_OQ));
      done = _mm256_or_pd(done, f0);
      const __m256d flip = _mm256_xor_pd(_mm256_cmp_pd(f, zero, _CMP_GT_OQ), pos_lo);
      const __m256d live = _mm256_andnot_pd(done, _mm256_castsi256_pd(_mm256_set1_epi64x(-1)));
      lo = _mm256_blendv_pd(lo, s, _mm256_andnot_pd(flip, live));
      hi = _mm256_blendv_pd(hi, s, _mm256_and_pd(flip, live));
      __m256d sn = _mm256_sub_pd(s, _mm256_div_pd(f, d));
      const __m256d inside = _mm256_and_pd(_mm256_cmp_pd(sn, lo, _CMP_GT_OQ), _mm256_cmp_pd(sn, hi, _CMP_LT_OQ));
      sn = _mm256_blendv_pd(_mm256_mul_pd(half, _mm256_add_pd(lo, hi)), sn, inside);
      const __m256d step = _mm256_and_pd(_mm256_sub_pd(sn, s), abs_mask);
      s = _mm256_blendv_pd(s, sn, live);
      done = _mm256_or_pd(done, _mm256_and_pd(live, _mm256_cmp_pd(step, tol, _CMP_LE_OQ)));
    }
    _mm256_storeu_pd(s_out + i, s);
    _mm256_storeu_pd(beta_out + i, _mm256_div_pd(horner4(p.w, s), horner4(p.z, s)));
    const int okm = _mm256_movemask_pd(_mm256_and_pd(good, done));
    for (int l = 0; l < 4; ++l) ok[i + l] = static_cast<std::uint8_t>((okm >> l) & 1);
  }
  for (; i < n; ++i) {
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

std::uint32_t crossings_avx2(const SegmentView& g, double px, double py) {
  const __m256d vpx = _mm256_set1_pd(px);
  const __m256d vpy = _mm256_set1_pd(py);
  std::uint32_t count = 0;
  std::size_t i = 0;
  for (; i + 4 <= g.n; i += 4) {
    const __m256d x0 = _mm256_loadu_pd(g.x0 + i), y0 = _mm256_loadu_pd(g.y0 + i);
    const __m256d x1 = _mm256_loadu_pd(g.x1 + i), y1 = _mm256_loadu_pd(g.y1 + i);
    const __m256d a = _mm256_cmp_pd(y0, vpy, _CMP_GT_OQ);
    const __m256d b = _mm256_cmp_pd(y1, vpy, _CMP_GT_OQ);
    const __m256d straddle = _mm256_xor_pd(a, b);
    if (_mm256_movemask_pd(straddle) == 0) continue;
    const __m256d xint = _mm256_add_pd(
        _mm256_div_pd(_mm256_mul_pd(_mm256_sub_pd(x1, x0), _mm256_sub_pd(vpy, y0)), _mm256_sub_pd(y1, y0)), x0);
    const __m256d hit = _mm256_and_pd(straddle, _mm256_cmp_pd(vpx, xint, _CMP_LT_OQ));
    count += static_cast<std::uint32_t>(std::popcount(static_cast<unsigned>(_mm256_movemask_pd(hit))));
  }
  for (; i < g.n; ++i) {
    const bool a = g.y0[i] > py;
    const bool b = g.y1[i] > py;
    if (a == b) continue;
    const double xint = (g.x1[i] - g.x0[i]) * (py - g.y0[i]) / (g.y1[i] - g.y0[i]) + g.x0[i];
    if (px < xint) ++count;
  }
  return count;
}

double distance_avx2(const SegmentView& g, double px, double py) {
  const __m256d vpx = _mm256_set1_pd(px);
  const __m256d vpy = _mm256_set1_pd(py);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d best4 = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  std::size_t i = 0;
  for (; i + 4 <= g.n; i += 4) {
    const __m256d x0 = _mm256_loadu_pd(g.x0 + i), y0 = _mm256_loadu_pd(g.y0 + i);
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(g.x1 + i), x0);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(g.y1 + i), y0);
    const __m256d len2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    __m256d t = _mm256_div_pd(
        _mm256_add_pd(_mm256_mul_pd(_mm256_sub_pd(vpx, x0), dx), _mm256_mul_pd(_mm256_sub_pd(vpy, y0), dy)), len2);
    // min/max operand order matches the scalar ternaries.
    t = _mm256_min_pd(t, one);
    t = _mm256_max_pd(t, zero);
    t = _mm256_blendv_pd(zero, t, _mm256_cmp_pd(len2, zero, _CMP_GT_OQ));
    const __m256d ex = _mm256_sub_pd(vpx, _mm256_add_pd(x0, _mm256_mul_pd(t, dx)));
    const __m256d ey = _mm256_sub_pd(vpy, _mm256_add_pd(y0, _mm256_mul_pd(t, dy)));
    const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(ex, ex), _mm256_mul_pd(ey, ey));
    best4 = _mm256_min_pd(d2, best4);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best4);
  double best = lanes[0];
  for (int l = 1; l < 4; ++l) best = lanes[l] < best ? lanes[l] : best;
  for (; i < g.n; ++i) {
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

constexpr KernelTable kAvx2{
    Isa::avx2, &horner_avx2, &winding_avx2, &sweep_avx2, &solve_avx2, &crossings_avx2, &distance_avx2,
};

}  // namespace

const KernelTable* avx2_table_impl() { return &kAvx2; }

}  // namespace inrs::kernels
