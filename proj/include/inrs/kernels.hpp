#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference version and,
// where the target allows, an AVX2 version selected at runtime. Variants use
// the same operation order without contraction, so they agree bitwise.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace inrs::kernels {

enum class Isa { scalar, avx2 };

const char* isa_name(Isa isa);

/// Coefficients of a rational piece and of its numerator/denominator derivatives.
struct RationalView {
  std::span<const double> u, v, w, z;
  std::span<const double> du, dv, dw, dz;
};

inline constexpr int kMonotoneSolveMaxIter = 64;
/// Newton step size at which a lane stops.
inline constexpr double kMonotoneSolveStep = 0x1p-50;

/// Structure-of-arrays segment list (x0, y0) -> (x1, y1).
struct SegmentView {
  const double* x0 = nullptr;
  const double* y0 = nullptr;
  const double* x1 = nullptr;
  const double* y1 = nullptr;
  std::size_t n = 0;
};

struct KernelTable {
  Isa isa;

  /// out[i] = p(s[i]).
  void (*horner)(std::span<const double> coeffs, const double* s, double* out, std::size_t n);

  /// Winding-number integrand (signed angular speed about (px, py)) at s[i].
  void (*winding_integrand)(const RationalView& piece, const double* s, std::size_t n, double px, double py,
                            double* out);

  /// For each i: ys[i] > hi increments counts[i]; lo <= ys[i] <= hi appends i to
  /// `band`. Returns the number of indices appended.
  std::size_t (*box_sweep)(const double* ys, std::size_t n, double lo, double hi, std::int32_t* counts,
                           std::uint32_t* band);

  /// For each i, the root s of u(s) - xs[i] v(s) in [s0, s1] of a strictly
  /// x-monotone piece, by safeguarded Newton iteration, and beta = w(s) / z(s).
  /// ok[i] = 0 when the end values do not bracket a root or the iteration stalls.
  void (*monotone_solve)(const RationalView& piece, double s0, double s1, const double* xs, std::size_t n,
                         double* s_out, double* beta_out, std::uint8_t* ok);

  /// Number of segments crossed by the rightward horizontal ray from (px, py)
  /// under the half-open even-odd convention.
  std::uint32_t (*polygon_crossings)(const SegmentView& segs, double px, double py);

  /// Minimum squared distance from (px, py) to the segments (+inf when empty).
  double (*min_distance_sq)(const SegmentView& segs, double px, double py);
};

const KernelTable& scalar_table();
/// Null when the AVX2 variants were not compiled in.
const KernelTable* avx2_table();

bool cpu_supports(Isa isa);
std::vector<Isa> available_isas();

/// Throws std::runtime_error when `isa` is not usable on this machine.
const KernelTable& table(Isa isa);

/// Best usable table. The environment variable INRS_KERNELS=scalar forces the
/// reference kernels.
const KernelTable& active();

}  // namespace inrs::kernels
