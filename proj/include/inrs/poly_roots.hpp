#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "inrs/polynomial.hpp"

namespace inrs {

struct Root {
  double value = 0.0;
  /// Number of solver roots merged into this one (2 for a detected double root).
  int multiplicity = 1;
};

struct RootSet {
  std::vector<Root> roots;  ///< strictly increasing
  /// Set when every coefficient is zero; `roots` is then empty.
  bool identically_zero = false;

  std::size_t size() const { return roots.size(); }
  bool empty() const { return roots.empty(); }
  std::vector<double> values() const;
};

struct RootOptions {
  double eps_root = 1e-10;  ///< roots this far outside [a, b] are clamped in
  double eps_res = 1e-8;    ///< residual acceptance, relative to residual_scale()
  double eps_sep = 1e-10;   ///< roots closer than this are merged
  double eps_lead = 1e-14;  ///< leading coefficient deflation threshold
  double eps_im = 1e-8;     ///< |Im| <= eps_im (1 + |Re|) counts as real
  int newton_steps = 3;
};

class RootSolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Residual scale used by the acceptance test: sum |c_i| max(1, |r|)^i.
double residual_scale(const Polynomial& p, double r);

/// All real roots of `p` inside [a, b], from the eigenvalues of the
/// balanced companion matrix followed by Newton polishing on the real axis.
RootSet real_roots_in_interval(const Polynomial& p, double a, double b, const RootOptions& opts = {});

/// Eigenvalues of an n x n upper Hessenberg matrix (row-major, modified in place).
/// Throws RootSolverError if the QR iteration does not converge.
std::vector<std::complex<double>> hessenberg_eigenvalues(std::vector<double>& h, int n);

/// All complex roots of a polynomial with nonzero leading coefficient.
std::vector<std::complex<double>> companion_roots(std::span<const double> coeffs);

}  // namespace inrs
