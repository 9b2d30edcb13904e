#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace inrs {

/// Real polynomial in the power basis, coefficient i multiplies s^i.
///
/// Piece polynomials live on the normalized local parameter s in [0, 1].
/// An empty coefficient vector is the zero polynomial.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {}
  Polynomial(std::initializer_list<double> coeffs) : c_(coeffs) {}

  static Polynomial constant(double c) { return Polynomial{c}; }
  /// Expands prod (s - r_i), highest coefficient 1.
  static Polynomial from_roots(std::span<const double> roots);

  std::span<const double> coeffs() const { return c_; }
  std::size_t size() const { return c_.size(); }
  double operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0.0; }

  /// Index of the highest stored coefficient, -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const;

  double operator()(double s) const;
  /// Value and first derivative in one Horner sweep.
  void eval_with_derivative(double s, double& value, double& deriv) const;

  Polynomial derivative() const;

  /// Sum of |c_i|; bounds |p(s)| for s in [-1, 1].
  double l1_norm() const;
  double max_abs_coeff() const;

  /// Drops leading coefficients with |c_n| <= rel_tol * max|c_i|.
  Polynomial deflated(double rel_tol) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double k, const Polynomial& a);

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<double> c_;
};

/// Numerator of the derivative of p/q: p' q - p q'.
Polynomial quotient_derivative_numerator(const Polynomial& p, const Polynomial& q);

}  // namespace inrs
