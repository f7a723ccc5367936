#include "wfp/window.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wfp/special.hpp"

namespace wfp {

Window::Window(double delta, double b, int phi_nodes)
    : delta_(delta), b_(b), scale_(b / (delta * std::sinh(b))), rule_(gauss_legendre(phi_nodes)) {
  if (!(delta > 0) || !(b > 0)) throw std::invalid_argument("Window: delta and b must be positive");
}

double Window::phi_prime(double t) const {
  if (t < 0 || t > delta_) return 0.0;
  double s = 2 * t / delta_ - 1;
  double r = 1 - s * s;
  return scale_ * bessel_i0(b_ * std::sqrt(r > 0 ? r : 0.0));
}

double Window::phi_dprime(double t) const {
  if (t < 0 || t > delta_) return 0.0;
  double s = 2 * t / delta_ - 1;
  double r = 1 - s * s;
  double z = b_ * std::sqrt(r > 0 ? r : 0.0);
  // d/dt I0(b sqrt(1-s^2)) = (2/delta) * (-s) * b^2 * I1(z)/z
  return scale_ * (2 / delta_) * (-s) * b_ * b_ * bessel_i1_over_x(z);
}

double Window::phi(double t) const {
  if (t <= 0) return 0.0;
  if (t >= delta_) return 1.0;
  bool upper = t > 0.5 * delta_;
  double a = upper ? delta_ - t : t;  // phi' is symmetric about delta/2
  double h = 0.5 * a, sum = 0;
  for (int i = 0; i < rule_.n; ++i) sum += rule_.weights[i] * phi_prime(h * (rule_.nodes[i] + 1));
  sum *= h;
  double v = upper ? 1.0 - sum : sum;
  return v < 0 ? 0.0 : (v > 1 ? 1.0 : v);
}

std::complex<double> Window::hat_phi_prime(double omega) const {
  double a = 0.5 * delta_ * omega;
  double z2 = a * a - b_ * b_;
  double sinc;
  if (z2 > 0) {
    double z = std::sqrt(z2);
    sinc = std::sin(z) / z;
  } else if (z2 < 0) {
    double y = std::sqrt(-z2);
    sinc = std::sinh(y) / y;
  } else {
    sinc = 1.0;
  }
  return std::polar(b_ / std::sinh(b_) * sinc, a);
}

double Window::influence_kernel(double k, double tau) const {
  if (tau < 0 || tau > delta_) return 0.0;
  return 2 * std::cos(k * tau) * phi_prime(tau) + sin_over_k(k, tau) * phi_dprime(tau);
}

std::complex<double> Window::hat_influence_kernel(double k, double omega) const {
  if (k == 0) throw std::invalid_argument("hat_influence_kernel: k must be nonzero");
  double r = omega / (2 * k);
  return (0.5 - r) * hat_phi_prime(omega + k) + (0.5 + r) * hat_phi_prime(omega - k);
}

double Window::hat_influence_bound(double k, double omega) const {
  double a = 0.5 * delta_ * (std::abs(k) - std::abs(omega));
  double q = a * a - b_ * b_;
  if (!(a > b_) || q <= 0) return INFINITY;
  return 3 * b_ / (std::sinh(b_) * std::sqrt(q));
}

PhiTable::PhiTable(const Window& w, int panels, int degree)
    : delta_(w.delta()), inv_h_(panels / w.delta()), panels_(panels), degree_(degree),
      coef_(static_cast<size_t>(panels) * (degree + 1)) {
  int n = degree + 1;
  std::vector<double> f(n), xs(n);
  for (int j = 0; j < n; ++j) xs[j] = std::cos(std::numbers::pi * (j + 0.5) / n);
  double h = delta_ / panels;
  for (int p = 0; p < panels; ++p) {
    for (int j = 0; j < n; ++j) f[j] = w.phi(h * (p + 0.5 * (xs[j] + 1)));
    for (int k = 0; k < n; ++k) {
      double c = 0;
      for (int j = 0; j < n; ++j) c += f[j] * std::cos(std::numbers::pi * k * (j + 0.5) / n);
      c *= 2.0 / n;
      if (k == 0) c *= 0.5;
      coef_[static_cast<size_t>(p) * n + k] = c;
    }
  }
}

double PhiTable::operator()(double t) const {
  if (t <= 0) return 0.0;
  if (t >= delta_) return 1.0;
  double u = t * inv_h_;
  int p = static_cast<int>(u);
  if (p >= panels_) p = panels_ - 1;
  double x = 2 * (u - p) - 1;
  const double* c = &coef_[static_cast<size_t>(p) * (degree_ + 1)];
  double b1 = 0, b2 = 0;
  for (int k = degree_; k >= 1; --k) {
    double b0 = 2 * x * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  double v = x * b1 - b2 + c[0];
  return v < 0 ? 0.0 : (v > 1 ? 1.0 : v);
}

}  // namespace wfp
