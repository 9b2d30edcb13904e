#include "inrs/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace inrs {

namespace {

double segment_distance(Point2 p, Point2 a, Point2 b) {
  const Point2 d = b - a;
  const double len2 = d.x * d.x + d.y * d.y;
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp(((p.x - a.x) * d.x + (p.y - a.y) * d.y) / len2, 0.0, 1.0);
  return norm(p - (a + t * d));
}

struct Flattener {
  const BoundaryCurve& curve;
  double eps;
  std::size_t cap;
  std::vector<Point2>& out;

  void run(double a, Point2 pa, double b, Point2 pb, int depth) {
    double dev = 0.0;
    for (double q : {0.25, 0.5, 0.75}) dev = std::max(dev, segment_distance(curve.eval(a + q * (b - a)), pa, pb));
    if (dev <= eps || depth > 60) {
      out.push_back(pa);
      if (out.size() > cap)
        throw std::length_error("polygonize: more than " + std::to_string(cap) + " vertices; use a larger tolerance");
      return;
    }
    // Deviation falls like 1/n^2; the 10% margin keeps most children from splitting again.
    const int n = std::clamp(static_cast<int>(std::ceil(std::sqrt(dev / eps) * 1.1)), 2, 1 << 16);
    Point2 prev = pa;
    double tp = a;
    for (int k = 1; k <= n; ++k) {
      const double t = k == n ? b : a + (b - a) * k / n;
      const Point2 pt = k == n ? pb : curve.eval(t);
      run(tp, prev, t, pt, depth + 1);
      tp = t;
      prev = pt;
    }
  }
};

}  // namespace

PolygonApprox polygonize(const BoundaryCurve& curve, double eps, std::size_t max_vertices) {
  if (!(eps > 0.0)) throw std::invalid_argument("polygonize: tolerance must be positive");
  PolygonApprox poly;
  poly.tolerance = eps;
  Flattener f{curve, eps, max_vertices, poly.vertices};
  for (std::size_t k = 0; k < curve.side_count(); ++k) {
    const auto& side = curve.sides()[k];
    // Global parameters of the distinct knots of this side.
    std::vector<double> ts;
    for (double kn : side.knots) {
      const double t = static_cast<double>(k) + (kn - side.t_begin()) / (side.t_end() - side.t_begin());
      if (ts.empty() || t > ts.back()) ts.push_back(t);
    }
    for (std::size_t j = 0; j + 1 < ts.size(); ++j) f.run(ts[j], curve.eval(ts[j]), ts[j + 1], curve.eval(ts[j + 1]), 0);
  }
  return poly;
}

int point_in_polygon(Point2 p, std::span<const Point2> poly) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2 a = poly[j], b = poly[i];
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) inside = !inside;
  }
  return inside ? 1 : 0;
}

PolygonOracle::PolygonOracle(std::span<const Point2> poly, const kernels::KernelTable* k)
    : k_(k ? k : &kernels::active()), n_(poly.size()) {
  if (n_ < 3) throw std::invalid_argument("PolygonOracle: need at least 3 vertices");
  ymin_ = ymax_ = poly[0].y;
  for (const auto& p : poly) {
    ymin_ = std::min(ymin_, p.y);
    ymax_ = std::max(ymax_, p.y);
  }
  const std::size_t ns = std::clamp<std::size_t>(n_ / 4, 1, 1 << 16);
  slabs_.resize(ns);
  inv_h_ = ymax_ > ymin_ ? static_cast<double>(ns) / (ymax_ - ymin_) : 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    const Point2 a = poly[i], b = poly[(i + 1) % n_];
    const std::size_t s0 = slab_of(std::min(a.y, b.y)), s1 = slab_of(std::max(a.y, b.y));
    for (std::size_t s = s0; s <= s1; ++s) {
      slabs_[s].x0.push_back(a.x);
      slabs_[s].y0.push_back(a.y);
      slabs_[s].x1.push_back(b.x);
      slabs_[s].y1.push_back(b.y);
    }
  }
}

std::size_t PolygonOracle::slab_of(double y) const {
  const double f = (y - ymin_) * inv_h_;
  if (!(f > 0.0)) return 0;
  return std::min(static_cast<std::size_t>(f), slabs_.size() - 1);
}

int PolygonOracle::classify(Point2 p) const {
  if (p.y < ymin_ || p.y > ymax_) return 0;
  return static_cast<int>(k_->polygon_crossings(slabs_[slab_of(p.y)].view(), p.x, p.y) & 1u);
}

std::vector<std::uint8_t> PolygonOracle::classify(std::span<const Point2> pts) const {
  std::vector<std::uint8_t> out(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) out[i] = static_cast<std::uint8_t>(classify(pts[i]));
  return out;
}

double PolygonOracle::distance(Point2 p, double cutoff) const {
  const double lo = std::max(p.y - cutoff, ymin_), hi = std::min(p.y + cutoff, ymax_);
  if (lo > hi) return cutoff;
  double best = cutoff * cutoff;
  for (std::size_t s = slab_of(lo); s <= slab_of(hi); ++s) best = std::min(best, k_->min_distance_sq(slabs_[s].view(), p.x, p.y));
  return std::sqrt(best);
}

AgreementReport compare_with_oracle(std::span<const Point2> pts, std::span<const Label> labels,
                                    const PolygonOracle& oracle, double band) {
  AgreementReport r;
  r.points = pts.size();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const int mine = labels[i] == Label::outside ? 0 : 1;
    if (mine == oracle.classify(pts[i])) {
      ++r.agree;
    } else if (oracle.distance(pts[i], 2.0 * band) <= band) {
      ++r.disagree_in_band;
    } else {
      ++r.disagree_outside_band;
      r.bad.push_back(i);
    }
  }
  return r;
}

}  // namespace inrs
