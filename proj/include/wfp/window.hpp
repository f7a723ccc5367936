#pragma once

#include <complex>
#include <vector>

#include "wfp/quadrature.hpp"

namespace wfp {

/// Kaiser-Bessel blending ramp over [0, delta] with shape parameter b.
class Window {
 public:
  /// phi_nodes: Gauss-Legendre nodes used per phi() call (2W in practice).
  Window(double delta, double b, int phi_nodes = 64);

  double delta() const { return delta_; }
  double b() const { return b_; }
  double normalization() const { return scale_; }

  double phi(double t) const;
  double phi_prime(double t) const;
  double phi_dprime(double t) const;

  /// Fourier transform of phi', convention int phi'(t) e^{i w t} dt.
  std::complex<double> hat_phi_prime(double omega) const;

  /// 2 cos(k tau) phi'(tau) + sin(k tau)/k phi''(tau).
  double influence_kernel(double k, double tau) const;

  /// Fourier transform of the influence kernel (same convention); k != 0.
  std::complex<double> hat_influence_kernel(double k, double omega) const;

  /// Upper bound on |hat_influence_kernel(k, omega)| valid when
  /// |k| - |omega| > 2b/delta.
  double hat_influence_bound(double k, double omega) const;

 private:
  double delta_, b_, scale_;
  GaussRule rule_;
};

/// Piecewise Chebyshev interpolant of phi on [0, delta] for hot loops.
/// Built from Window::phi and exact to about 1e-15.
class PhiTable {
 public:
  explicit PhiTable(const Window& w, int panels = 16, int degree = 24);
  double operator()(double t) const;

 private:
  double delta_, inv_h_;
  int panels_, degree_;
  std::vector<double> coef_;  // panels_ x (degree_+1) Chebyshev coefficients
};

}  // namespace wfp
