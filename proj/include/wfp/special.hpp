#pragma once

namespace wfp {

/// Modified Bessel function of the first kind, order 0.
double bessel_i0(double x);

/// Modified Bessel function of the first kind, order 1.
double bessel_i1(double x);

/// I1(x)/x, with the limit 1/2 at x = 0.
double bessel_i1_over_x(double x);

/// sin(k x)/k, continuous through k = 0 (limit x).
double sin_over_k(double k, double x);

/// Crossover between the power series and the asymptotic expansion.
inline constexpr double kBesselCrossover = 50.0;

}  // namespace wfp
