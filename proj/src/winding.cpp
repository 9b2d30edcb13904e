#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "inrs/classifier.hpp"

namespace inrs {

namespace {

struct GaussRule {
  std::vector<double> nodes;    // on [0, 1]
  std::vector<double> weights;  // sum to 1
};

// Legendre roots by Newton iteration from the Chebyshev guess.
GaussRule make_rule(int n) {
  GaussRule r;
  r.nodes.resize(static_cast<std::size_t>(n));
  r.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1.0;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const auto j = static_cast<std::size_t>(n - 1 - i);
    r.nodes[j] = 0.5 * (x + 1.0);
    r.weights[j] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

const GaussRule& rule(int n) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_rule(n)).first;
  return it->second;
}

struct Interval {
  double a, b;
  int depth;
};

// Signed angle from u to v, in (-pi, pi].
double turn(Point2 u, Point2 v) { return std::atan2(u.x * v.y - u.y * v.x, u.x * v.x + u.y * v.y); }

}  // namespace

WindingResult winding_number(Point2 p, const Geometry& g, int quad_order, int max_depth,
                             const kernels::KernelTable* kt) {
  if (quad_order < 1) throw std::invalid_argument("winding_number: quadrature order must be positive");
  const kernels::KernelTable& k = kt ? *kt : kernels::active();
  const GaussRule& gr = rule(quad_order);
  const auto n = static_cast<std::size_t>(quad_order);
  const auto& pieces = g.pieces();
  const auto& derivs = g.derivs();

  // The integral over [a, b] equals the swept angle, which the chord angle gives
  // exactly up to a multiple of 2 pi. Quadrature only picks the branch: a half
  // is accepted when its sweep is below a quarter turn and the rule agrees.
  constexpr double kMaxTurn = 0.5 * std::numbers::pi;
  constexpr double kBranchTol = 0.25;
  std::vector<double> s(n), f(n);
  std::vector<Interval> stack;
  bool converged = true;
  double total = 0.0;

  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& pc = pieces[i];
    const auto& d = derivs[i];
    const kernels::RationalView view{pc.u.coeffs(),  pc.v.coeffs(),  pc.w.coeffs(),  pc.z.coeffs(),
                                     d.du.coeffs(), d.dv.coeffs(), d.dw.coeffs(), d.dz.coeffs()};
    auto integrate = [&](double a, double b) {
      for (std::size_t q = 0; q < n; ++q) s[q] = a + (b - a) * gr.nodes[q];
      k.winding_integrand(view, s.data(), n, p.x, p.y, f.data());
      double acc = 0.0;
      for (std::size_t q = 0; q < n; ++q) acc += gr.weights[q] * f[q];
      return acc * (b - a);
    };
    auto rel = [&](double t) { return Point2{pc.alpha(t) - p.x, pc.beta(t) - p.y}; };

    stack.clear();
    stack.push_back({0.0, 1.0, 0});
    while (!stack.empty()) {
      const Interval iv = stack.back();
      stack.pop_back();
      const double m = 0.5 * (iv.a + iv.b);
      const Point2 pa = rel(iv.a), pm = rel(m), pb = rel(iv.b);
      const double chord_l = turn(pa, pm), chord_r = turn(pm, pb);
      const double left = integrate(iv.a, m), right = integrate(m, iv.b);
      if (!std::isfinite(left + right + chord_l + chord_r)) {
        converged = false;
        continue;
      }
      const bool ok = std::abs(chord_l) <= kMaxTurn && std::abs(chord_r) <= kMaxTurn &&
                      std::abs(left - chord_l) <= kBranchTol && std::abs(right - chord_r) <= kBranchTol;
      if (ok) {
        total += chord_l + chord_r;
      } else if (iv.depth + 1 >= max_depth) {
        total += left + right;
        converged = false;
      } else {
        stack.push_back({m, iv.b, iv.depth + 1});
        stack.push_back({iv.a, m, iv.depth + 1});
      }
    }
  }

  WindingResult out;
  out.raw = total / (2.0 * std::numbers::pi);
  if (g.orientation() == Orientation::clockwise) out.raw = -out.raw;
  out.value = static_cast<int>(std::lround(out.raw));
  out.converged = converged && std::abs(out.raw - out.value) <= 0.25;
  return out;
}

}  // namespace inrs
