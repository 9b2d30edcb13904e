#include "inrs/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace inrs {

Polynomial Polynomial::from_roots(std::span<const double> roots) {
  std::vector<double> c{1.0};
  for (double r : roots) {
    std::vector<double> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return Polynomial(std::move(c));
}

bool Polynomial::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](double v) { return v == 0.0; });
}

double Polynomial::operator()(double s) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * s + *it;
  return acc;
}

void Polynomial::eval_with_derivative(double s, double& value, double& deriv) const {
  value = 0.0;
  deriv = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    deriv = deriv * s + value;
    value = value * s + *it;
  }
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial{};
  std::vector<double> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = static_cast<double>(i) * c_[i];
  return Polynomial(std::move(d));
}

double Polynomial::l1_norm() const {
  double s = 0.0;
  for (double v : c_) s += std::abs(v);
  return s;
}

double Polynomial::max_abs_coeff() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

Polynomial Polynomial::deflated(double rel_tol) const {
  const double limit = rel_tol * max_abs_coeff();
  std::size_t n = c_.size();
  while (n > 0 && std::abs(c_[n - 1]) <= limit) --n;
  return Polynomial(std::vector<double>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(n)));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<double> c(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<double> c(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] - b[i];
  return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.size() == 0 || b.size() == 0) return Polynomial{};
  std::vector<double> c(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return Polynomial(std::move(c));
}

Polynomial operator*(double k, const Polynomial& a) {
  std::vector<double> c(a.c_);
  for (double& v : c) v *= k;
  return Polynomial(std::move(c));
}

Polynomial quotient_derivative_numerator(const Polynomial& p, const Polynomial& q) {
  return p.derivative() * q - p * q.derivative();
}

}  // namespace inrs
