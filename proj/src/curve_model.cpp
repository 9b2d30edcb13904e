#include "inrs/curve_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace inrs {

namespace {

std::string side_label(int side) { return "side " + std::to_string(side); }

Point2 side_start(const NurbsSide& s) { return eval_curve(s, s.t_begin()); }
Point2 side_end(const NurbsSide& s) { return eval_curve(s, s.t_end()); }

}  // namespace

int find_span(std::span<const double> knots, int degree, double t) {
  const int n_basis = static_cast<int>(knots.size()) - degree - 1;
  if (n_basis < 1 || degree < 0) throw std::domain_error("find_span: knot vector too short");
  const double lo = knots[degree];
  const double hi = knots[n_basis];
  if (!(t >= lo && t <= hi)) throw std::domain_error("find_span: parameter outside knot range");
  if (t == hi) {
    // Last non-empty span.
    int i = n_basis - 1;
    while (i > degree && knots[i] == knots[i + 1]) --i;
    return i;
  }
  // Largest i in [degree, n_basis - 1] with knots[i] <= t.
  auto first = knots.begin() + degree;
  auto last = knots.begin() + n_basis + 1;
  auto it = std::upper_bound(first, last, t);
  return static_cast<int>(std::distance(knots.begin(), it)) - 1;
}

BasisValues eval_basis_in_span(std::span<const double> knots, int degree, int span, double t) {
  BasisValues out;
  out.span = span;
  out.values.assign(static_cast<std::size_t>(degree) + 1, 0.0);
  std::vector<double> left(static_cast<std::size_t>(degree) + 1);
  std::vector<double> right(static_cast<std::size_t>(degree) + 1);
  auto& n = out.values;
  n[0] = 1.0;
  for (int j = 1; j <= degree; ++j) {
    left[j] = t - knots[span + 1 - j];
    right[j] = knots[span + j] - t;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      const double tmp = n[r] / (right[r + 1] + left[j - r]);
      n[r] = saved + right[r + 1] * tmp;
      saved = left[j - r] * tmp;
    }
    n[j] = saved;
  }
  return out;
}

BasisValues eval_basis(std::span<const double> knots, int degree, double t) {
  return eval_basis_in_span(knots, degree, find_span(knots, degree, t), t);
}

namespace {

Point2 eval_in_span(const NurbsSide& side, int span, double t) {
  const BasisValues basis = eval_basis_in_span(side.knots, side.degree, span, t);
  double nx = 0.0, ny = 0.0, den = 0.0;
  for (int r = 0; r <= side.degree; ++r) {
    const int i = span - side.degree + r;
    const double bw = basis.values[r] * side.weights[i];
    nx += bw * side.control_points[i].x;
    ny += bw * side.control_points[i].y;
    den += bw;
  }
  return {nx / den, ny / den};
}

}  // namespace

Point2 eval_curve(const NurbsSide& side, double t) {
  if (!(t >= side.t_begin() && t <= side.t_end()))
    throw std::domain_error("eval_curve: parameter outside side interval");
  return eval_in_span(side, find_span(side.knots, side.degree, t), t);
}

void validate_side(const NurbsSide& side, int k) {
  using K = GeometryError::Kind;
  const int p = side.degree;
  const auto m = side.control_points.size();
  if (p < 1) throw GeometryError(K::bad_degree, side_label(k) + ": degree must be >= 1", k);
  if (side.weights.size() != m)
    throw GeometryError(K::size_mismatch, side_label(k) + ": weight count differs from control point count", k);
  if (m < static_cast<std::size_t>(p) + 1)
    throw GeometryError(K::size_mismatch, side_label(k) + ": needs at least degree+1 control points", k);
  if (side.knots.size() != m + static_cast<std::size_t>(p) + 1)
    throw GeometryError(K::size_mismatch,
                        side_label(k) + ": knot count must equal control points + degree + 1", k);
  for (double t : side.knots)
    if (!std::isfinite(t)) throw GeometryError(K::non_finite, side_label(k) + ": non-finite knot", k);
  for (std::size_t i = 1; i < side.knots.size(); ++i)
    if (side.knots[i] < side.knots[i - 1])
      throw GeometryError(K::bad_knots, side_label(k) + ": knots must be non-decreasing", k);
  for (int i = 1; i <= p; ++i) {
    if (side.knots[i] != side.knots[0] || side.knots[side.knots.size() - 1 - i] != side.knots.back())
      throw GeometryError(K::bad_knots, side_label(k) + ": knot vector must be clamped", k);
  }
  if (!(side.knots.front() < side.knots.back()))
    throw GeometryError(K::bad_knots, side_label(k) + ": no non-empty knot span", k);
  for (double w : side.weights) {
    if (!std::isfinite(w)) throw GeometryError(K::non_finite, side_label(k) + ": non-finite weight", k);
    if (!(w > 0.0)) throw GeometryError(K::non_positive_weight, side_label(k) + ": non-positive weight", k);
  }
  for (const Point2& c : side.control_points)
    if (!is_finite(c)) throw GeometryError(K::non_finite, side_label(k) + ": non-finite control point", k);
}

double signed_area(std::span<const Point2> poly) {
  if (poly.size() < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    twice += (poly[j].x - poly[i].x) * (poly[j].y + poly[i].y);
  }
  return 0.5 * twice;
}

namespace {

Rect control_box_of(std::span<const NurbsSide> sides) {
  Rect box;
  for (const auto& s : sides)
    for (const auto& c : s.control_points) box.expand(c);
  return box;
}

std::vector<Point2> sample_sides(std::span<const NurbsSide> sides, int n) {
  std::vector<Point2> pts;
  pts.reserve(static_cast<std::size_t>(n));
  const double k_total = static_cast<double>(sides.size());
  for (int i = 0; i < n; ++i) {
    const double t = k_total * static_cast<double>(i) / n;
    const int k = std::min(static_cast<int>(t), static_cast<int>(sides.size()) - 1);
    const auto& s = sides[k];
    const double local = s.t_begin() + (t - k) * (s.t_end() - s.t_begin());
    pts.push_back(eval_curve(s, std::min(local, s.t_end())));
  }
  return pts;
}

}  // namespace

Orientation validate_boundary(std::span<const NurbsSide> sides, double close_rel_tol) {
  using K = GeometryError::Kind;
  if (sides.empty()) throw GeometryError(K::empty_curve, "boundary has no sides");
  for (std::size_t k = 0; k < sides.size(); ++k) validate_side(sides[k], static_cast<int>(k));

  const double tol = close_rel_tol * control_box_of(sides).diagonal();
  const std::size_t n = sides.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Point2 end = side_end(sides[k]);
    const Point2 next = side_start(sides[(k + 1) % n]);
    if (norm(end - next) > tol) {
      if (k + 1 == n)
        throw GeometryError(K::open_curve, "boundary is not closed: last side does not end at the first vertex",
                            static_cast<int>(k));
      throw GeometryError(K::non_abutting_sides,
                          side_label(static_cast<int>(k)) + " does not end where the next side starts",
                          static_cast<int>(k));
    }
  }

  const auto poly = sample_sides(sides, kOrientationSamples);
  const double area = signed_area(poly);
  if (area == 0.0) throw GeometryError(K::degenerate_piece, "boundary encloses zero area");
  return area > 0.0 ? Orientation::counterclockwise : Orientation::clockwise;
}

BoundaryCurve::BoundaryCurve(std::vector<NurbsSide> sides, std::string name, double close_rel_tol)
    : sides_(std::move(sides)), name_(std::move(name)) {
  orientation_ = validate_boundary(sides_, close_rel_tol);
  control_box_ = control_box_of(sides_);
  close_tol_ = close_rel_tol * control_box_.diagonal();
}

std::pair<int, double> BoundaryCurve::to_local(double t) const {
  if (!(t >= t_min() && t <= t_max())) throw std::domain_error("BoundaryCurve: parameter outside [0, K]");
  const int k = std::min(static_cast<int>(t), static_cast<int>(sides_.size()) - 1);
  const auto& s = sides_[k];
  const double local = s.t_begin() + (t - k) * (s.t_end() - s.t_begin());
  return {k, std::clamp(local, s.t_begin(), s.t_end())};
}

Point2 BoundaryCurve::eval(double t) const {
  const auto [k, local] = to_local(t);
  return eval_curve(sides_[k], local);
}

std::vector<Point2> BoundaryCurve::sample(int n) const { return sample_sides(sides_, n); }

std::vector<double> chebyshev_nodes01(int n) {
  std::vector<double> s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    // Descending cos gives ascending s.
    s[i] = 0.5 * (1.0 - std::cos((2.0 * i + 1.0) * std::numbers::pi / (2.0 * n)));
  }
  return s;
}

std::vector<double> interpolate_power_basis(std::span<const double> nodes, std::span<const double> values) {
  const std::size_t n = nodes.size();
  std::vector<double> dd(values.begin(), values.end());
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - j]);

  // Newton form -> power basis by nested multiplication with (s - node_i).
  std::vector<double> c{dd[n - 1]};
  for (std::size_t i = n - 1; i-- > 0;) {
    std::vector<double> next(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= nodes[i] * c[k];
    }
    next[0] += dd[i];
    c = std::move(next);
  }
  return c;
}

std::vector<RationalPiece> extract_pieces(const BoundaryCurve& curve, double piece_rel_tol) {
  using K = GeometryError::Kind;
  constexpr double kDeflate = 1e-13;
  std::vector<RationalPiece> pieces;
  const auto& sides = curve.sides();

  for (std::size_t k = 0; k < sides.size(); ++k) {
    const NurbsSide& side = sides[k];
    const int p = side.degree;
    const int n_basis = static_cast<int>(side.control_points.size());
    const double t0 = side.t_begin();
    const double t1 = side.t_end();
    const auto nodes = chebyshev_nodes01(p + 1);

    for (int j = p; j < n_basis; ++j) {
      const double ka = side.knots[j];
      const double kb = side.knots[j + 1];
      if (!(ka < kb)) continue;

      std::vector<double> nx(nodes.size()), ny(nodes.size()), den(nodes.size());
      for (std::size_t m = 0; m < nodes.size(); ++m) {
        const double t = ka + nodes[m] * (kb - ka);
        const auto basis = eval_basis_in_span(side.knots, p, j, t);
        double sx = 0.0, sy = 0.0, sd = 0.0;
        for (int r = 0; r <= p; ++r) {
          const int i = j - p + r;
          const double bw = basis.values[r] * side.weights[i];
          sx += bw * side.control_points[i].x;
          sy += bw * side.control_points[i].y;
          sd += bw;
        }
        nx[m] = sx;
        ny[m] = sy;
        den[m] = sd;
      }

      RationalPiece piece;
      piece.side_index = static_cast<int>(k);
      piece.span_index = j;
      piece.a = static_cast<double>(k) + (ka - t0) / (t1 - t0);
      piece.b = static_cast<double>(k) + (kb - t0) / (t1 - t0);
      piece.u = Polynomial(interpolate_power_basis(nodes, nx)).deflated(kDeflate);
      piece.v = Polynomial(interpolate_power_basis(nodes, den)).deflated(kDeflate);
      piece.w = Polynomial(interpolate_power_basis(nodes, ny)).deflated(kDeflate);
      piece.z = piece.v;

      // Denominator must keep one sign on the closed span.
      constexpr int kDenSamples = 33;
      const double v0 = piece.v(0.0);
      for (int i = 0; i <= kDenSamples; ++i) {
        const double s = static_cast<double>(i) / kDenSamples;
        const double dv = piece.v(s);
        const double dz = piece.z(s);
        if (!(dv * v0 > 0.0) || !(dz * v0 > 0.0))
          throw GeometryError(K::vanishing_denominator,
                              side_label(static_cast<int>(k)) + ", span " + std::to_string(j) +
                                  ": rational denominator vanishes",
                              static_cast<int>(k), j);
      }

      // Fidelity against direct evaluation at 2p+1 interior points and both ends.
      const int n_check = 2 * p + 1;
      for (int i = 0; i <= n_check + 1; ++i) {
        const double s = static_cast<double>(i) / (n_check + 1);
        const Point2 ref = eval_in_span(side, j, ka + s * (kb - ka));
        const Point2 got = piece.point(s);
        if (std::abs(got.x - ref.x) > piece_rel_tol * (1.0 + std::abs(ref.x)) ||
            std::abs(got.y - ref.y) > piece_rel_tol * (1.0 + std::abs(ref.y)))
          throw GeometryError(K::piece_mismatch,
                              side_label(static_cast<int>(k)) + ", span " + std::to_string(j) +
                                  ": extracted piece does not reproduce the curve",
                              static_cast<int>(k), j);
      }
      pieces.push_back(std::move(piece));
    }
  }
  return pieces;
}

}  // namespace inrs
