#include "wfp/special.hpp"

#include <cmath>
#include <numbers>

namespace wfp {

namespace {

// sum_k (x^2/4)^k / (k! (k+nu)!), all terms positive
double power_series(double x, int nu) {
  double q = 0.25 * x * x;
  double term = 1.0;
  for (int j = 1; j <= nu; ++j) term /= j;
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * (k + nu));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

double asymptotic(double x, int nu) {
  double mu = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    double next = -term * (mu - (2.0 * k - 1) * (2.0 * k - 1)) / (k * 8.0 * x);
    if (std::abs(next) > std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return std::exp(x) / std::sqrt(2 * std::numbers::pi * x) * sum;
}

}  // namespace

double bessel_i0(double x) {
  x = std::abs(x);
  return x < kBesselCrossover ? power_series(x, 0) : asymptotic(x, 0);
}

double bessel_i1(double x) {
  double ax = std::abs(x);
  double v = ax < kBesselCrossover ? 0.5 * ax * power_series(ax, 1) : asymptotic(ax, 1);
  return x < 0 ? -v : v;
}

double bessel_i1_over_x(double x) {
  double ax = std::abs(x);
  if (ax < kBesselCrossover) return 0.5 * power_series(ax, 1);
  return asymptotic(ax, 1) / ax;
}

double sin_over_k(double k, double x) {
  double z = k * x;
  if (std::abs(z) < 1e-4) {
    double z2 = z * z;
    return x * (1.0 - z2 / 6.0 * (1.0 - z2 / 20.0));
  }
  return std::sin(z) / k;
}

}  // namespace wfp
