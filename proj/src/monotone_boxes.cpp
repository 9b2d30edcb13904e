#include "inrs/monotone_boxes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "inrs/poly_roots.hpp"

namespace inrs {

namespace {

constexpr double kConstantRel = 1e-12;   // derivative numerator vs. its product terms
constexpr double kSplitMargin = 1e-9;    // roots closer than this to 0/1 do not split
constexpr double kZeroSlopeRel = 1e-10;  // one-sided slope treated as zero
constexpr double kDegenerateRel = 1e-12; // box width vs. global diagonal
constexpr double kCriticalMergeRel = 1e-10;

bool is_constant_ratio(const Polynomial& num, const Polynomial& den, const Polynomial& dnum) {
  const double ref = num.derivative().l1_norm() * den.l1_norm() + num.l1_norm() * den.derivative().l1_norm();
  if (ref == 0.0) return true;
  return dnum.l1_norm() <= kConstantRel * ref;
}

int slope_sign(const Polynomial& d, bool constant, double s) {
  if (constant) return 0;
  const double v = d(s);
  if (std::abs(v) <= kZeroSlopeRel * d.l1_norm()) return 0;
  return v > 0.0 ? 1 : -1;
}

void sort_unique(std::vector<double>& v, double tol) {
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double x : v)
    if (out.empty() || x - out.back() > tol) out.push_back(x);
  v = std::move(out);
}

Monotonicity direction(double from, double to) {
  if (to > from) return Monotonicity::increasing;
  if (to < from) return Monotonicity::decreasing;
  return Monotonicity::constant;
}

}  // namespace

PieceAnalysis split_monotone(const RationalPiece& piece) {
  PieceAnalysis out;
  out.dx_num = quotient_derivative_numerator(piece.u, piece.v);
  out.dy_num = quotient_derivative_numerator(piece.w, piece.z);
  out.x_constant = is_constant_ratio(piece.u, piece.v, out.dx_num);
  out.y_constant = is_constant_ratio(piece.w, piece.z, out.dy_num);
  if (out.x_constant && out.y_constant)
    throw GeometryError(GeometryError::Kind::degenerate_piece,
                        "side " + std::to_string(piece.side_index) + ", span " + std::to_string(piece.span_index) +
                            ": piece collapses to a point",
                        piece.side_index, piece.span_index);

  std::vector<double> breaks{0.0, 1.0};
  auto add_roots = [&](const Polynomial& d, bool constant, std::vector<double>& tangency) {
    if (constant) return;
    const RootSet rs = real_roots_in_interval(d, 0.0, 1.0);
    for (const Root& r : rs.roots) {
      tangency.push_back(r.value);
      if (r.value > kSplitMargin && r.value < 1.0 - kSplitMargin) breaks.push_back(r.value);
    }
  };
  add_roots(out.dx_num, out.x_constant, out.x_tangency);
  add_roots(out.dy_num, out.y_constant, out.y_tangency);
  sort_unique(breaks, kSplitMargin);
  if (breaks.back() != 1.0) breaks.back() = 1.0;
  out.breaks = std::move(breaks);
  return out;
}

CriticalSet collect_critical(std::span<const RationalPiece> pieces, std::span<const PieceAnalysis> analysis,
                             double merge_tol) {
  CriticalSet cs;
  const std::size_t n = pieces.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = pieces[i];
    const auto& a = analysis[i];
    if (a.x_constant) {
      cs.x_critical.push_back(p.alpha(0.0));
      cs.x_critical.push_back(p.alpha(1.0));
    } else {
      for (double s : a.x_tangency) cs.x_critical.push_back(p.alpha(s));
    }
    if (a.y_constant) {
      cs.y_critical.push_back(p.beta(0.0));
      cs.y_critical.push_back(p.beta(1.0));
    } else {
      for (double s : a.y_tangency) cs.y_critical.push_back(p.beta(s));
    }

    // Turning vertices: one-sided slopes of opposite (or zero) sign at the join.
    const std::size_t j = (i + 1) % n;
    const auto& b = analysis[j];
    const Point2 v = pieces[j].point(0.0);
    if (slope_sign(a.dx_num, a.x_constant, 1.0) * slope_sign(b.dx_num, b.x_constant, 0.0) <= 0)
      cs.x_critical.push_back(v.x);
    if (slope_sign(a.dy_num, a.y_constant, 1.0) * slope_sign(b.dy_num, b.y_constant, 0.0) <= 0)
      cs.y_critical.push_back(v.y);
  }
  sort_unique(cs.x_critical, merge_tol);
  sort_unique(cs.y_critical, merge_tol);
  return cs;
}

Geometry build_boxes(const BoundaryCurve& curve, int refine) {
  if (refine < 1) throw std::invalid_argument("build_boxes: refinement must be >= 1");
  Geometry g;
  g.refine_ = refine;
  g.orientation_ = curve.orientation();
  g.parameter_length_ = curve.t_max() - curve.t_min();
  g.pieces_ = extract_pieces(curve);

  const std::size_t np = g.pieces_.size();
  g.analysis_.reserve(np);
  g.derivs_.reserve(np);
  for (const auto& p : g.pieces_) {
    g.analysis_.push_back(split_monotone(p));
    g.derivs_.push_back({p.u.derivative(), p.v.derivative(), p.w.derivative(), p.z.derivative()});
  }

  std::vector<Point2> starts(np);
  for (std::size_t i = 0; i < np; ++i) starts[i] = g.pieces_[i].point(0.0);

  for (std::size_t i = 0; i < np; ++i) {
    const auto& piece = g.pieces_[i];
    const auto& an = g.analysis_[i];

    std::vector<double> nodes;
    for (std::size_t k = 0; k + 1 < an.breaks.size(); ++k) {
      const double lo = an.breaks[k], hi = an.breaks[k + 1];
      for (int r = 0; r < refine; ++r) nodes.push_back(lo + (hi - lo) * r / refine);
    }
    nodes.push_back(1.0);

    std::vector<Point2> values(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      if (nodes[k] == 0.0)
        values[k] = starts[i];
      else if (nodes[k] == 1.0)
        values[k] = starts[(i + 1) % np];
      else
        values[k] = piece.point(nodes[k]);
    }

    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
      MonotoneBox box;
      box.piece = static_cast<std::uint32_t>(i);
      box.s0 = nodes[k];
      box.s1 = nodes[k + 1];
      box.t0 = piece.global_t(box.s0);
      box.t1 = piece.global_t(box.s1);
      box.start = values[k];
      box.end = values[k + 1];
      box.rect.expand(box.start);
      box.rect.expand(box.end);
      box.x_mono = an.x_constant ? Monotonicity::constant : direction(box.start.x, box.end.x);
      box.y_mono = an.y_constant ? Monotonicity::constant : direction(box.start.y, box.end.y);

      // Endpoint extrema are only valid on a monotone interval; check the slope sign.
      const double mid = 0.5 * (box.s0 + box.s1);
      auto check = [&](const Polynomial& d, Monotonicity m, const char* axis) {
        if (m == Monotonicity::constant) return;
        const double slope = d(mid);
        const double want = m == Monotonicity::increasing ? 1.0 : -1.0;
        if (slope * want < 0.0 && std::abs(slope) > 1e-8 * d.l1_norm())
          throw GeometryError(GeometryError::Kind::monotonicity_violation,
                              std::string("monotone box violates ") + axis + "-monotonicity on side " +
                                  std::to_string(piece.side_index) + ", span " + std::to_string(piece.span_index),
                              piece.side_index, piece.span_index);
      };
      check(an.dx_num, box.x_mono, "x");
      check(an.dy_num, box.y_mono, "y");
      g.boxes_.push_back(box);
    }
  }

  for (const auto& b : g.boxes_) g.global_box_.expand(b.rect);
  const double diag = g.global_box_.diagonal();

  g.critical_ = collect_critical(g.pieces_, g.analysis_, kCriticalMergeRel * diag);

  // Boxes thinner than the degeneracy tolerance become segments; their
  // coordinate joins the critical set so rays along them are routed aside.
  const double eps_deg = kDegenerateRel * diag;
  bool added = false;
  for (auto& b : g.boxes_) {
    if (!b.x_constant() && b.rect.width() <= eps_deg) {
      b.x_mono = Monotonicity::constant;
      g.critical_.x_critical.push_back(b.start.x);
      added = true;
    }
    if (!b.y_constant() && b.rect.height() <= eps_deg) {
      b.y_mono = Monotonicity::constant;
      g.critical_.y_critical.push_back(b.start.y);
      added = true;
    }
    if (b.x_constant() && b.y_constant())
      throw GeometryError(GeometryError::Kind::degenerate_piece, "monotone box collapses to a point");
  }
  if (added) {
    sort_unique(g.critical_.x_critical, kCriticalMergeRel * diag);
    sort_unique(g.critical_.y_critical, kCriticalMergeRel * diag);
  }

  std::stable_sort(g.boxes_.begin(), g.boxes_.end(),
                   [](const MonotoneBox& l, const MonotoneBox& r) { return l.rect.xmin < r.rect.xmin; });
  g.prefix_max_xmax_.resize(g.boxes_.size());
  double run = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < g.boxes_.size(); ++i) {
    run = std::max(run, g.boxes_[i].rect.xmax);
    g.prefix_max_xmax_[i] = run;
  }

  g.by_ymin_.resize(g.boxes_.size());
  std::iota(g.by_ymin_.begin(), g.by_ymin_.end(), 0u);
  std::stable_sort(g.by_ymin_.begin(), g.by_ymin_.end(), [&](std::uint32_t l, std::uint32_t r) {
    return g.boxes_[l].rect.ymin < g.boxes_[r].rect.ymin;
  });
  g.prefix_max_ymax_.resize(g.boxes_.size());
  run = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < g.by_ymin_.size(); ++i) {
    run = std::max(run, g.boxes_[g.by_ymin_[i]].rect.ymax);
    g.prefix_max_ymax_[i] = run;
  }
  return g;
}

}  // namespace inrs
