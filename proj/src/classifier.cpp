#include "inrs/classifier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <thread>

#include "inrs/poly_roots.hpp"

namespace inrs {

ClassifyStats& ClassifyStats::operator+=(const ClassifyStats& o) {
  points += o.points;
  in_box += o.in_box;
  equations += o.equations;
  boxes_visited += o.boxes_visited;
  dubious_vertical += o.dubious_vertical;
  dubious_horizontal += o.dubious_horizontal;
  winding_nonconverged += o.winding_nonconverged;
  consistency_errors += o.consistency_errors;
  return *this;
}

Tolerances resolve_tolerances(const Geometry& g, const ClassifyOptions& opts) {
  const Rect& box = g.global_box();
  Tolerances t;
  t.boundary = opts.boundary_tol >= 0.0 ? opts.boundary_tol : 1e-9 * box.diagonal();
  t.critical_x = opts.critical_tol >= 0.0 ? opts.critical_tol : 1e-9 * box.width();
  t.critical_y = opts.critical_tol >= 0.0 ? opts.critical_tol : 1e-9 * box.height();
  return t;
}

bool owns_abscissa(const MonotoneBox& b, double x) {
  switch (b.x_mono) {
    case Monotonicity::increasing:
      return b.start.x <= x && x < b.end.x;
    case Monotonicity::decreasing:
      return b.end.x < x && x <= b.start.x;
    case Monotonicity::constant:
      return false;
  }
  return false;
}

bool owns_ordinate(const MonotoneBox& b, double y) {
  switch (b.y_mono) {
    case Monotonicity::increasing:
      return b.start.y <= y && y < b.end.y;
    case Monotonicity::decreasing:
      return b.end.y < y && y <= b.start.y;
    case Monotonicity::constant:
      return false;
  }
  return false;
}

bool detect_critical(double coord, std::span<const double> critical, double tol) {
  if (critical.empty()) return false;
  auto it = std::lower_bound(critical.begin(), critical.end(), coord);
  if (it != critical.end() && *it - coord <= tol) return true;
  if (it != critical.begin() && coord - *std::prev(it) <= tol) return true;
  return false;
}

namespace {

// Solves num(s) - level * den(s) = 0 on the box and classifies the hit by the
// other coordinate. `along` is the ray's moving coordinate at the query point.
RayHit resolve_in_band(const Polynomial& num, const Polynomial& den, const Polynomial& other_num,
                       const Polynomial& other_den, double level, double along, const MonotoneBox& box,
                       double box_start_level, double box_start_other, double tol) {
  RayHit hit;
  double value;
  if (level == box_start_level) {
    value = box_start_other;
  } else {
    const RootSet rs = real_roots_in_interval(num - level * den, box.s0, box.s1);
    hit.solved = true;
    if (rs.size() != 1) {
      hit.outcome = RayOutcome::inconsistent;
      return hit;
    }
    const double s = rs.roots[0].value;
    value = other_num(s) / other_den(s);
    hit.at = value;
    if (std::abs(value - along) <= tol) {
      hit.outcome = RayOutcome::boundary_hit;
      return hit;
    }
    if (rs.roots[0].multiplicity % 2 == 0) {
      hit.outcome = RayOutcome::critical;
      return hit;
    }
  }
  hit.at = value;
  if (std::abs(value - along) <= tol)
    hit.outcome = RayOutcome::boundary_hit;
  else
    hit.outcome = value < along ? RayOutcome::crossed : RayOutcome::not_crossed;
  return hit;
}

RayHit vertical_in_band(Point2 p, const MonotoneBox& b, const Geometry& g, double tol) {
  const auto& pc = g.pieces()[b.piece];
  return resolve_in_band(pc.u, pc.v, pc.w, pc.z, p.x, p.y, b, b.start.x, b.start.y, tol);
}

RayHit horizontal_in_band(Point2 p, const MonotoneBox& b, const Geometry& g, double tol) {
  const auto& pc = g.pieces()[b.piece];
  return resolve_in_band(pc.w, pc.z, pc.u, pc.v, p.y, p.x, b, b.start.y, b.start.x, tol);
}

void apply(CrossState& st, const RayHit& hit, ClassifyStats* stats) {
  switch (hit.outcome) {
    case RayOutcome::crossed:
      ++st.crossings;
      break;
    case RayOutcome::not_crossed:
      break;
    case RayOutcome::boundary_hit:
      st.boundary_hit = true;
      break;
    case RayOutcome::critical:
      st.dubious = true;
      break;
    case RayOutcome::inconsistent:
      st.dubious = true;
      if (stats) ++stats->consistency_errors;
      break;
  }
  if (stats && hit.solved) ++stats->equations;
}

}  // namespace

RayHit vertical_ray_count(Point2 p, std::uint32_t index, const Geometry& g, double tol) {
  const MonotoneBox& b = g.boxes()[index];
  RayHit hit;
  if (b.x_constant()) {
    // The ray runs along a vertical boundary segment.
    if (p.x < b.rect.xmin || p.x > b.rect.xmax || p.y < b.rect.ymin - tol) return hit;
    hit.outcome = p.y <= b.rect.ymax + tol ? RayOutcome::boundary_hit : RayOutcome::critical;
    return hit;
  }
  if (!owns_abscissa(b, p.x) || p.y < b.rect.ymin - tol) return hit;
  if (p.y > b.rect.ymax + tol) {
    hit.outcome = RayOutcome::crossed;
    return hit;
  }
  return vertical_in_band(p, b, g, tol);
}

RayHit horizontal_ray_count(Point2 p, std::uint32_t index, const Geometry& g, double tol) {
  const MonotoneBox& b = g.boxes()[index];
  RayHit hit;
  if (b.y_constant()) {
    if (p.y < b.rect.ymin || p.y > b.rect.ymax || p.x < b.rect.xmin - tol) return hit;
    hit.outcome = p.x <= b.rect.xmax + tol ? RayOutcome::boundary_hit : RayOutcome::critical;
    return hit;
  }
  if (!owns_ordinate(b, p.y) || p.x < b.rect.xmin - tol) return hit;
  if (p.x > b.rect.xmax + tol) {
    hit.outcome = RayOutcome::crossed;
    return hit;
  }
  return horizontal_in_band(p, b, g, tol);
}

std::vector<std::uint32_t> candidate_boxes(Point2 p, const Geometry& g, double y_slack) {
  const auto& boxes = g.boxes();
  const auto& pm = g.prefix_max_xmax();
  const auto hi = static_cast<std::size_t>(
      std::upper_bound(boxes.begin(), boxes.end(), p.x,
                       [](double x, const MonotoneBox& b) { return x < b.rect.xmin; }) -
      boxes.begin());
  const auto lo = static_cast<std::size_t>(std::lower_bound(pm.begin(), pm.end(), p.x) - pm.begin());
  std::vector<std::uint32_t> out;
  for (std::size_t i = lo; i < hi; ++i) {
    const Rect& r = boxes[i].rect;
    if (r.xmax >= p.x && p.y >= r.ymin - y_slack) out.push_back(static_cast<std::uint32_t>(i));
  }
  return out;
}

std::vector<std::uint32_t> candidate_boxes_horizontal(Point2 p, const Geometry& g, double x_slack) {
  const auto& boxes = g.boxes();
  const auto& order = g.by_ymin();
  const auto& pm = g.prefix_max_ymax();
  const auto hi = static_cast<std::size_t>(
      std::upper_bound(order.begin(), order.end(), p.y,
                       [&](double y, std::uint32_t b) { return y < boxes[b].rect.ymin; }) -
      order.begin());
  const auto lo = static_cast<std::size_t>(std::lower_bound(pm.begin(), pm.end(), p.y) - pm.begin());
  std::vector<std::uint32_t> out;
  for (std::size_t i = lo; i < hi; ++i) {
    const Rect& r = boxes[order[i]].rect;
    if (r.ymax >= p.y && p.x >= r.xmin - x_slack) out.push_back(order[i]);
  }
  return out;
}

CrossState ray_pass(Point2 p, const Geometry& g, Axis axis, const Tolerances& tol, ClassifyStats* stats) {
  CrossState st;
  if (axis == Axis::vertical) {
    st.dubious = detect_critical(p.x, g.critical().x_critical, tol.critical_x);
    for (std::uint32_t b : candidate_boxes(p, g, tol.boundary)) {
      if (stats) ++stats->boxes_visited;
      apply(st, vertical_ray_count(p, b, g, tol.boundary), stats);
    }
  } else {
    st.dubious = detect_critical(p.y, g.critical().y_critical, tol.critical_y);
    for (std::uint32_t b : candidate_boxes_horizontal(p, g, tol.boundary)) {
      // Horizontal solves are fallback work and stay out of the vertical-pass counters.
      const RayHit hit = horizontal_ray_count(p, b, g, tol.boundary);
      apply(st, hit, nullptr);
      if (stats && hit.outcome == RayOutcome::inconsistent) ++stats->consistency_errors;
    }
  }
  return st;
}

std::vector<CrossState> horizontal_ray_pass(std::span<const Point2> points, const Geometry& g,
                                            const ClassifyOptions& opts) {
  const Tolerances tol = resolve_tolerances(g, opts);
  std::vector<CrossState> out;
  out.reserve(points.size());
  for (const Point2& p : points) out.push_back(ray_pass(p, g, Axis::horizontal, tol));
  return out;
}

Label finalize(const CrossState& st, std::optional<int> winding, bool report_boundary) {
  if (st.boundary_hit) return report_boundary ? Label::boundary : Label::inside;
  if (!st.dubious) return (st.crossings % 2) != 0 ? Label::inside : Label::outside;
  if (winding) return *winding != 0 ? Label::inside : Label::outside;
  return Label::outside;
}

std::vector<Label> finalize(std::span<const CrossState> states, std::span<const std::optional<int>> winding,
                            bool report_boundary) {
  std::vector<Label> out(states.size());
  for (std::size_t i = 0; i < states.size(); ++i)
    out[i] = finalize(states[i], i < winding.size() ? winding[i] : std::nullopt, report_boundary);
  return out;
}

namespace {

int worker_count(const ClassifyOptions& opts, std::size_t work) {
  int n = opts.threads;
  if (n <= 0) n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return static_cast<int>(std::clamp<std::size_t>(work / 1024, 1, static_cast<std::size_t>(n)));
}

template <class Fn>
void parallel_chunks(std::size_t n, int workers, Fn&& fn) {
  if (workers <= 1) {
    fn(0, std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    const std::size_t lo = n * static_cast<std::size_t>(w) / static_cast<std::size_t>(workers);
    const std::size_t hi = n * static_cast<std::size_t>(w + 1) / static_cast<std::size_t>(workers);
    pool.emplace_back([&fn, w, lo, hi] { fn(w, lo, hi); });
  }
  for (auto& t : pool) t.join();
}

// Per-point state of the sorted and per-point classifiers, next to an int32 crossing count.
constexpr std::uint8_t kDubious = 1;
constexpr std::uint8_t kBoundaryHit = 2;
constexpr std::uint8_t kWound = 4;        // settled by the winding number
constexpr std::uint8_t kWindingInside = 8;

void apply(std::int32_t& count, std::uint8_t& flags, const RayHit& hit, ClassifyStats* stats) {
  CrossState st;
  apply(st, hit, stats);
  count += st.crossings;
  if (st.dubious) flags |= kDubious;
  if (st.boundary_hit) flags |= kBoundaryHit;
}

Label finalize_flags(std::int32_t count, std::uint8_t flags, bool report_boundary) {
  CrossState st{count, (flags & kDubious) != 0, (flags & kBoundaryHit) != 0};
  std::optional<int> wind;
  if (flags & kWound) wind = (flags & kWindingInside) ? 1 : 0;
  return finalize(st, wind, report_boundary);
}

// Horizontal ray then winding number for the points the vertical ray could not settle.
void resolve_dubious(std::span<const double> xs, std::span<const double> ys, std::span<std::int32_t> counts,
                     std::span<std::uint8_t> flags, const Geometry& g, const ClassifyOptions& opts,
                     const Tolerances& tol, int workers, ClassifyStats& stats) {
  std::vector<std::uint32_t> pending;
  for (std::size_t i = 0; i < flags.size(); ++i)
    if ((flags[i] & (kDubious | kBoundaryHit)) == kDubious) pending.push_back(static_cast<std::uint32_t>(i));
  stats.dubious_vertical += pending.size();
  if (pending.empty()) return;

  const kernels::KernelTable* k = opts.kernels ? opts.kernels : &kernels::active();
  std::vector<ClassifyStats> local(static_cast<std::size_t>(std::max(workers, 1)));
  parallel_chunks(pending.size(), workers, [&](int w, std::size_t lo, std::size_t hi) {
    ClassifyStats& ls = local[static_cast<std::size_t>(w)];
    for (std::size_t j = lo; j < hi; ++j) {
      const std::uint32_t i = pending[j];
      const Point2 p{xs[i], ys[i]};
      const CrossState h = ray_pass(p, g, Axis::horizontal, tol, &ls);
      if (h.boundary_hit) {
        flags[i] |= kBoundaryHit;
        continue;
      }
      if (!h.dubious) {
        counts[i] = h.crossings;
        flags[i] &= static_cast<std::uint8_t>(~kDubious);
        continue;
      }
      ++ls.dubious_horizontal;
      const WindingResult wr = winding_number(p, g, opts.quad_order, opts.max_depth, k);
      if (!wr.converged) ++ls.winding_nonconverged;
      flags[i] |= kWound;
      if (wr.value != 0) flags[i] |= kWindingInside;
    }
  });
  for (const auto& ls : local) stats += ls;
}

template <class T>
void ensure_size(std::vector<T>& v, std::size_t n) {
  if (v.size() < n) v.resize(std::max(n, 2 * v.size()));
}

constexpr std::size_t kBlockPoints = std::size_t{1} << 11;

// One input block through the sorted pipeline; labels[offset + origin] receive the results.
void classify_block(std::span<const Point2> cloud, std::size_t offset, const Geometry& g, const ClassifyOptions& opts,
                    const Tolerances& tol, const Rect& box, std::span<Label> labels, ClassifyStats& stats) {
  const kernels::KernelTable& kern = opts.kernels ? *opts.kernels : kernels::active();
  // Per-thread buffers reused across blocks and calls; bound to references so
  // worker lambdas see the caller's instances.
  thread_local SortedCloud tls_sc;
  thread_local std::vector<std::int32_t> tls_counts;
  thread_local std::vector<std::uint8_t> tls_flags;
  SortedCloud& sc = tls_sc;
  std::vector<std::int32_t>& counts = tls_counts;
  std::vector<std::uint8_t>& flags = tls_flags;
  sort_cloud(cloud, box, sc);
  const std::size_t m = sc.origin.size();
  stats.in_box += m;
  const std::vector<double>& xs = sc.xs;
  const std::vector<double>& ys = sc.ys;
  auto point = [&](std::size_t i) { return Point2{xs[i], ys[i]}; };

  counts.assign(m, 0);
  flags.assign(m, 0);
  const int workers = worker_count(opts, m);
  std::vector<ClassifyStats> local(static_cast<std::size_t>(workers));

  parallel_chunks(m, workers, [&](int w, std::size_t c0, std::size_t c1) {
    ClassifyStats& ls = local[static_cast<std::size_t>(w)];
    std::vector<std::uint32_t> band, solve_idx;
    std::vector<double> solve_x, solve_s, solve_beta;
    std::vector<std::uint8_t> solve_ok;
    const double* xb = xs.data() + c0;
    const double* xe = xs.data() + c1;
    const auto& crit = g.critical().x_critical;
    for (std::size_t i = c0; i < c1; ++i)
      if (detect_critical(xs[i], crit, tol.critical_x)) flags[i] = kDubious;

    for (const MonotoneBox& b : g.boxes()) {
      const double lo_y = b.rect.ymin - tol.boundary;
      const double hi_y = b.rect.ymax + tol.boundary;
      if (b.x_constant()) {
        const std::size_t lo = c0 + static_cast<std::size_t>(std::lower_bound(xb, xe, b.rect.xmin) - xb);
        const std::size_t hi = c0 + static_cast<std::size_t>(std::upper_bound(xb, xe, b.rect.xmax) - xb);
        ls.boxes_visited += hi - lo;
        for (std::size_t i = lo; i < hi; ++i) {
          if (ys[i] < lo_y) continue;
          flags[i] |= ys[i] <= hi_y ? kBoundaryHit : kDubious;
        }
        continue;
      }
      std::size_t lo, hi;
      if (b.x_mono == Monotonicity::increasing) {
        lo = c0 + static_cast<std::size_t>(std::lower_bound(xb, xe, b.start.x) - xb);
        hi = c0 + static_cast<std::size_t>(std::lower_bound(xb, xe, b.end.x) - xb);
      } else {
        lo = c0 + static_cast<std::size_t>(std::upper_bound(xb, xe, b.end.x) - xb);
        hi = c0 + static_cast<std::size_t>(std::upper_bound(xb, xe, b.start.x) - xb);
      }
      if (lo >= hi) continue;
      ls.boxes_visited += hi - lo;
      ensure_size(band, hi - lo);
      const std::size_t k = kern.box_sweep(ys.data() + lo, hi - lo, lo_y, hi_y, counts.data() + lo, band.data());
      if (!opts.batched_solve) {
        for (std::size_t j = 0; j < k; ++j) {
          const std::size_t i = lo + band[j];
          apply(counts[i], flags[i], vertical_in_band(point(i), b, g, tol.boundary), &ls);
        }
        continue;
      }
      // Endpoint abscissas reuse the stored value; the rest go to the kernel together.
      ensure_size(solve_idx, k);
      ensure_size(solve_x, k);
      ensure_size(solve_s, k);
      ensure_size(solve_beta, k);
      ensure_size(solve_ok, k);
      std::size_t nb = 0;
      for (std::size_t j = 0; j < k; ++j) {
        const std::size_t i = lo + band[j];
        if (xs[i] == b.start.x) {
          apply(counts[i], flags[i], vertical_in_band(point(i), b, g, tol.boundary), &ls);
        } else {
          solve_idx[nb] = static_cast<std::uint32_t>(i);
          solve_x[nb++] = xs[i];
        }
      }
      if (nb == 0) continue;
      const auto& pc = g.pieces()[b.piece];
      const auto& dd = g.derivs()[b.piece];
      const kernels::RationalView view{pc.u.coeffs(),  pc.v.coeffs(),  pc.w.coeffs(),  pc.z.coeffs(),
                                       dd.du.coeffs(), dd.dv.coeffs(), dd.dw.coeffs(), dd.dz.coeffs()};
      kern.monotone_solve(view, b.s0, b.s1, solve_x.data(), nb, solve_s.data(), solve_beta.data(), solve_ok.data());
      for (std::size_t j = 0; j < nb; ++j) {
        const std::size_t i = solve_idx[j];
        if (!solve_ok[j]) {
          apply(counts[i], flags[i], vertical_in_band(point(i), b, g, tol.boundary), &ls);
          continue;
        }
        ++ls.equations;
        const double gap = solve_beta[j] - ys[i];
        if (std::abs(gap) <= tol.boundary)
          flags[i] |= kBoundaryHit;
        else if (gap < 0.0)
          ++counts[i];
      }
    }
  });
  for (const auto& ls : local) stats += ls;

  resolve_dubious(xs, ys, counts, flags, g, opts, tol, workers, stats);
  for (std::size_t j = 0; j < m; ++j)
    labels[offset + sc.origin[j]] = finalize_flags(counts[j], flags[j], opts.report_boundary);
}

}  // namespace

std::vector<Label> classify_batch(std::span<const Point2> cloud, const Geometry& g, const ClassifyOptions& opts,
                                  ClassifyStats* stats_out) {
  const Tolerances tol = resolve_tolerances(g, opts);
  const Rect box = g.global_box().inflated(tol.boundary);
  ClassifyStats stats;
  stats.points = cloud.size();
  std::vector<Label> labels(cloud.size(), Label::outside);
  // Blocks keep the sort and sweep working set cache resident; every label
  // depends on its own point only, so blocking does not change results.
  for (std::size_t off = 0; off < cloud.size(); off += kBlockPoints) {
    const std::size_t len = std::min(kBlockPoints, cloud.size() - off);
    classify_block(cloud.subspan(off, len), off, g, opts, tol, box, labels, stats);
  }
  if (stats_out) *stats_out = stats;
  return labels;
}

std::vector<Label> classify_per_point(std::span<const Point2> cloud, const Geometry& g, const ClassifyOptions& opts,
                                      ClassifyStats* stats_out) {
  const Tolerances tol = resolve_tolerances(g, opts);
  const Rect box = g.global_box().inflated(tol.boundary);
  ClassifyStats stats;
  stats.points = cloud.size();
  std::vector<Label> labels(cloud.size(), Label::outside);
  const auto& boxes = g.boxes();
  const auto nboxes = static_cast<std::uint32_t>(boxes.size());

  std::vector<double> xs, ys;
  std::vector<std::uint32_t> origin;
  std::vector<std::int32_t> counts;
  std::vector<std::uint8_t> flags;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Point2 p = cloud[i];
    if (!box.contains(p)) continue;
    ++stats.in_box;
    std::int32_t count = 0;
    std::uint8_t flag = detect_critical(p.x, g.critical().x_critical, tol.critical_x) ? kDubious : 0;
    for (std::uint32_t b = 0; b < nboxes; ++b) {
      const Rect& r = boxes[b].rect;
      if (p.x < r.xmin || p.x > r.xmax || p.y < r.ymin - tol.boundary) continue;
      ++stats.boxes_visited;
      apply(count, flag, vertical_ray_count(p, b, g, tol.boundary), &stats);
    }
    xs.push_back(p.x);
    ys.push_back(p.y);
    origin.push_back(static_cast<std::uint32_t>(i));
    counts.push_back(count);
    flags.push_back(flag);
  }

  resolve_dubious(xs, ys, counts, flags, g, opts, tol, 1, stats);
  for (std::size_t j = 0; j < xs.size(); ++j)
    labels[origin[j]] = finalize_flags(counts[j], flags[j], opts.report_boundary);
  if (stats_out) *stats_out = stats;
  return labels;
}

Label classify_point(Point2 p, const Geometry& g, const ClassifyOptions& opts) {
  const std::array<Point2, 1> one{p};
  return classify_batch(one, g, opts).front();
}

}  // namespace inrs
