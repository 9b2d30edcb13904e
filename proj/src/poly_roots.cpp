#include "inrs/poly_roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace inrs {

namespace {

double sign_of(double magnitude, double s) { return s >= 0.0 ? std::abs(magnitude) : -std::abs(magnitude); }

// Diagonal similarity by powers of two; keeps Hessenberg form and is exact.
void balance(std::vector<double>& a, int n) {
  constexpr double radix = 2.0;
  constexpr double sqrdx = radix * radix;
  bool done = false;
  while (!done) {
    done = true;
    for (int i = 0; i < n; ++i) {
      double r = 0.0, c = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a[j * n + i]);
        r += std::abs(a[i * n + j]);
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        g = 1.0 / f;
        for (int j = 0; j < n; ++j) a[i * n + j] *= g;
        for (int j = 0; j < n; ++j) a[j * n + i] *= f;
      }
    }
  }
}

double horner(std::span<const double> c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

void horner_d(std::span<const double> c, double x, double& v, double& d) {
  v = 0.0;
  d = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    d = d * x + v;
    v = v * x + *it;
  }
}

// Horner with error-free transformations: the value is as accurate as if
// computed in twice the working precision.
double horner_comp(std::span<const double> c, double x) {
  double acc = 0.0, err = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    const double prod = acc * x;
    const double pe = std::fma(acc, x, -prod);
    const double sum = prod + *it;
    const double bb = sum - prod;
    const double se = (prod - (sum - bb)) + (*it - bb);
    err = err * x + (pe + se);
    acc = sum;
  }
  return acc + err;
}

double scale_at(std::span<const double> c, double r) {
  const double m = std::max(1.0, std::abs(r));
  double s = 0.0, pw = 1.0;
  for (double ci : c) {
    s += std::abs(ci) * pw;
    pw *= m;
  }
  return s;
}

}  // namespace

std::vector<double> RootSet::values() const {
  std::vector<double> v;
  v.reserve(roots.size());
  for (const auto& r : roots) v.push_back(r.value);
  return v;
}

double residual_scale(const Polynomial& p, double r) { return scale_at(p.coeffs(), r); }

std::vector<std::complex<double>> hessenberg_eigenvalues(std::vector<double>& a, int n) {
  std::vector<std::complex<double>> wri(static_cast<std::size_t>(n));
  auto A = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr int kMaxIts = 60;

  double anorm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(A(i, j));

  int nn = n - 1;
  double t = 0.0;
  while (nn >= 0) {
    int its = 0;
    int l = 0;
    do {
      for (l = nn; l > 0; --l) {
        double s = std::abs(A(l - 1, l - 1)) + std::abs(A(l, l));
        if (s == 0.0) s = anorm;
        if (std::abs(A(l, l - 1)) <= eps * s) {
          A(l, l - 1) = 0.0;
          break;
        }
      }
      double x = A(nn, nn);
      if (l == nn) {
        wri[nn--] = x + t;
      } else {
        double y = A(nn - 1, nn - 1);
        double w = A(nn, nn - 1) * A(nn - 1, nn);
        if (l == nn - 1) {
          double p = 0.5 * (y - x);
          double q = p * p + w;
          double z = std::sqrt(std::abs(q));
          x += t;
          if (q >= 0.0) {
            z = p + sign_of(z, p);
            wri[nn - 1] = wri[nn] = x + z;
            if (z != 0.0) wri[nn] = x - w / z;
          } else {
            wri[nn] = std::complex<double>(x + p, -z);
            wri[nn - 1] = std::conj(wri[nn]);
          }
          nn -= 2;
        } else {
          if (its == kMaxIts) throw RootSolverError("hessenberg_eigenvalues: QR iteration did not converge");
          if (its % 10 == 0 && its > 0) {
            // Exceptional shift.
            t += x;
            for (int i = 0; i <= nn; ++i) A(i, i) -= x;
            const double s = std::abs(A(nn, nn - 1)) + std::abs(A(nn - 1, nn - 2));
            y = x = 0.75 * s;
            w = -0.4375 * s * s;
          }
          ++its;
          int m = nn - 2;
          double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
          for (; m >= l; --m) {
            z = A(m, m);
            r = x - z;
            double s = y - z;
            p = (r * s - w) / A(m + 1, m) + A(m, m + 1);
            q = A(m + 1, m + 1) - z - r - s;
            r = A(m + 2, m + 1);
            s = std::abs(p) + std::abs(q) + std::abs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == l) break;
            const double u = std::abs(A(m, m - 1)) * (std::abs(q) + std::abs(r));
            const double v = std::abs(p) * (std::abs(A(m - 1, m - 1)) + std::abs(z) + std::abs(A(m + 1, m + 1)));
            if (u <= eps * v) break;
          }
          for (int i = m; i < nn - 1; ++i) {
            A(i + 2, i) = 0.0;
            if (i != m) A(i + 2, i - 1) = 0.0;
          }
          for (int k = m; k < nn; ++k) {
            if (k != m) {
              p = A(k, k - 1);
              q = A(k + 1, k - 1);
              r = 0.0;
              if (k + 1 != nn) r = A(k + 2, k - 1);
              if ((x = std::abs(p) + std::abs(q) + std::abs(r)) != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            const double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
            if (s != 0.0) {
              if (k == m) {
                if (l != m) A(k, k - 1) = -A(k, k - 1);
              } else {
                A(k, k - 1) = -s * x;
              }
              p += s;
              x = p / s;
              y = q / s;
              z = r / s;
              q /= p;
              r /= p;
              for (int j = k; j <= nn; ++j) {
                p = A(k, j) + q * A(k + 1, j);
                if (k + 1 != nn) {
                  p += r * A(k + 2, j);
                  A(k + 2, j) -= p * z;
                }
                A(k + 1, j) -= p * y;
                A(k, j) -= p * x;
              }
              const int mmin = nn < k + 3 ? nn : k + 3;
              for (int i = l; i <= mmin; ++i) {
                p = x * A(i, k) + y * A(i, k + 1);
                if (k + 1 != nn) {
                  p += z * A(i, k + 2);
                  A(i, k + 2) -= p * r;
                }
                A(i, k + 1) -= p * q;
                A(i, k) -= p;
              }
            }
          }
        }
      }
    } while (l + 1 < nn);
  }
  return wri;
}

std::vector<std::complex<double>> companion_roots(std::span<const double> c) {
  const int n = static_cast<int>(c.size()) - 1;
  if (n < 1) return {};
  const double lead = c[n];
  if (n == 1) return {std::complex<double>(-c[0] / lead, 0.0)};
  if (n == 2) {
    // Eigenvalues of the 2x2 companion matrix in closed form.
    const double b = c[1] / lead;
    const double k = c[0] / lead;
    const double half = -0.5 * b;
    const double disc = half * half - k;
    if (disc >= 0.0) {
      const double q = half + sign_of(std::sqrt(disc), half);
      if (q == 0.0) return {0.0, 0.0};
      return {std::complex<double>(q, 0.0), std::complex<double>(k / q, 0.0)};
    }
    const double im = std::sqrt(-disc);
    return {std::complex<double>(half, im), std::complex<double>(half, -im)};
  }
  std::vector<double> h(static_cast<std::size_t>(n) * n, 0.0);
  for (int j = 0; j < n; ++j) h[j] = -c[n - 1 - j] / lead;
  for (int i = 1; i < n; ++i) h[static_cast<std::size_t>(i) * n + i - 1] = 1.0;
  balance(h, n);
  return hessenberg_eigenvalues(h, n);
}

RootSet real_roots_in_interval(const Polynomial& poly, double a, double b, const RootOptions& opts) {
  RootSet out;
  if (poly.is_zero()) {
    out.identically_zero = true;
    return out;
  }
  const Polynomial p = poly.deflated(opts.eps_lead);
  const int n = p.degree();
  if (n < 1) return out;

  // Monic copy; exact under power-of-two and sign scaling of the input.
  std::vector<double> m(p.coeffs().begin(), p.coeffs().end());
  const double lead = m.back();
  for (double& ci : m) ci /= lead;

  const auto eig = companion_roots(m);

  struct Candidate {
    double x;
    int mult;
  };
  std::vector<Candidate> cand;
  const double pre_window = 1e-6 * std::max(1.0, b - a);
  for (const auto& z : eig) {
    const double re = z.real();
    const double im = z.imag();
    int mult = 1;
    if (std::abs(im) > opts.eps_im * (1.0 + std::abs(re))) {
      // A conjugate pair straddling the axis may be a split multiple root; keep one
      // member of the pair and let the residual test decide.
      if (im < 0.0 || std::abs(im) > 1e-4 * (1.0 + std::abs(re))) continue;
      mult = 2;
    }
    if (re < a - pre_window || re > b + pre_window) continue;
    cand.push_back({re, mult});
  }

  std::vector<Root> accepted;
  for (auto [x, mult] : cand) {
    // Polish against the input coefficients, not the rounded monic copy.
    const auto pc = p.coeffs();
    double v = horner_comp(pc, x);
    for (int it = 0; it < opts.newton_steps; ++it) {
      double pv, pd;
      horner_d(pc, x, pv, pd);
      pv = horner_comp(pc, x);
      if (pd == 0.0 || pv == 0.0) break;
      const double nx = x - pv / pd;
      const double nv = horner_comp(pc, nx);
      if (!(std::abs(nv) <= std::abs(v))) break;
      x = nx;
      v = nv;
    }
    v = horner(m, x);
    if (std::abs(v) > opts.eps_res * scale_at(m, x)) continue;
    if (x < a - opts.eps_root || x > b + opts.eps_root) continue;
    accepted.push_back({std::clamp(x, a, b), mult});
  }

  std::sort(accepted.begin(), accepted.end(), [](const Root& l, const Root& r) { return l.value < r.value; });

  // Merge roots closer than eps_sep, and tight clusters the polynomial never
  // leaves (split multiple roots).
  for (const Root& r : accepted) {
    if (!out.roots.empty()) {
      Root& last = out.roots.back();
      const double gap = r.value - last.value;
      bool merge = gap <= opts.eps_sep;
      if (!merge && gap <= 1e-7 * (1.0 + std::abs(r.value))) {
        const double mid = 0.5 * (r.value + last.value);
        merge = std::abs(horner(m, mid)) <= opts.eps_res * scale_at(m, mid);
      }
      if (merge) {
        if (std::abs(horner(m, r.value)) < std::abs(horner(m, last.value))) last.value = r.value;
        last.multiplicity += r.multiplicity;
        continue;
      }
    }
    out.roots.push_back(r);
  }
  return out;
}

}  // namespace inrs
