#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace wfp {

/// Discrete weights of the one- and two-spring schemes.
struct SchemeParams {
  double alpha = 0;        ///< beta dt / 2
  double kappa = 0;        ///< L / dt
  int s = 0;               ///< floor(kappa)
  double alpha_tilde = 0;  ///< (s + 1 - kappa) alpha
  double xi1 = 0, xi2 = 0;
};

SchemeParams scheme_params(double beta, double L, double dt);

/// Scalar scheme for one spring. g[n] is the data at t_n (g[0] unused);
/// returns sigma[0..N] with sigma[0] = 0.
std::vector<double> march_m1(int p, double alpha, const std::vector<double>& g);

struct DensityPair {
  std::vector<double> s1, s2;
};

/// Two-spring schemes: p = 1 at any separation, p = 2 with kappa < 1
/// (implicit coupling) or kappa >= 1 (delayed coupling).
DensityPair march_m2(int p, const SchemeParams& sp, const std::vector<double>& g1,
                     const std::vector<double>& g2);

struct RootReport {
  std::vector<std::complex<double>> plus, minus;  ///< all roots of p+ and p-
  double minus_at_one = 0;   ///< p-(1)
  double plus_at_one = 0;    ///< p+(1)
  double max_other = 0;      ///< largest |z| excluding the unit root of p-
  int inside_plus = 0;       ///< argument-principle counts on |z| = 1
  int inside_minus_reduced = 0;  ///< same for p-(z)/(z-1)
};

RootReport char_roots_m2_p1(double alpha, double kappa);

struct BoundReport {
  double C = 0;
  double max_ratio = 0;
  bool holds = true;
};

/// Random data trials of the implicit two-spring p = 2 scheme (L < dt).
BoundReport verify_stability_bound(double L, double beta, double dt, int trials, std::uint64_t seed,
                                   int steps = 500);

struct OrderReport {
  std::vector<double> dts, errors;
  double order = 0;
};

/// Max over steps of ||e^n||_1 against Gaussian manufactured densities.
OrderReport measure_convergence_m2(double beta, double L, double T, const std::vector<double>& dts,
                                   int p = 2);

/// True if the impulse response of the one-spring scheme decays by 1e-6
/// over the given number of steps.
bool impulse_decays(int p, double alpha, int steps);

}  // namespace wfp
