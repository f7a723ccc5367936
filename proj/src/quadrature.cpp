#include "wfp/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wfp {

GaussRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  GaussRule r;
  r.n = n;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // recompute derivative at the converged node
    double p0 = 1, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1);
    double w = 2.0 / ((1 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

GaussRule gauss_legendre(int n, double a, double b) {
  if (!(a < b)) throw std::invalid_argument("gauss_legendre: need a < b");
  GaussRule r = gauss_legendre(n);
  double h = 0.5 * (b - a), c = 0.5 * (a + b);
  for (int i = 0; i < n; ++i) {
    r.nodes[i] = c + h * r.nodes[i];
    r.weights[i] *= h;
  }
  return r;
}

int lagrange_stencil(double x, int lo, int hi, int p, double* out) {
  if (hi - lo + 1 < p) throw std::invalid_argument("lagrange_stencil: grid shorter than p");
  if (x < lo - 0.5 || x > hi + 0.5) throw std::out_of_range("lagrange_stencil: point outside grid hull");
  int first = static_cast<int>(std::floor(x - 0.5 * p + 1.0));
  if (first < lo) first = lo;
  if (first > hi - p + 1) first = hi - p + 1;
  // barycentric weights for equispaced nodes: (-1)^i C(p-1, i)
  double denom = 0;
  for (int i = 0; i < p; ++i) {
    double diff = x - (first + i);
    if (diff == 0.0) {
      for (int k = 0; k < p; ++k) out[k] = 0.0;
      out[i] = 1.0;
      return first;
    }
  }
  double c = 1.0;
  for (int i = 0; i < p; ++i) {
    double wi = (i % 2 == 0 ? c : -c) / (x - (first + i));
    out[i] = wi;
    denom += wi;
    c = c * (p - 1 - i) / (i + 1);
  }
  for (int i = 0; i < p; ++i) out[i] /= denom;
  return first;
}

Stencil interp_weights(double xi, const UniformGrid& grid, int p) {
  Stencil s;
  s.weights.resize(p);
  double x = (xi - grid.origin) / grid.spacing;
  s.first = lagrange_stencil(x, grid.first, grid.last, p, s.weights.data());
  return s;
}

}  // namespace wfp
