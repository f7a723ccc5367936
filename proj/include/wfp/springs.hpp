#pragma once

#include <cstdint>
#include <vector>

namespace wfp {

struct SpringSet {
  std::vector<double> x;
  std::vector<double> beta;

  SpringSet() = default;
  /// Rejects coincident positions and nonpositive strengths. Zero strengths
  /// are accepted only with allow_zero_strength (manufactured-data oracles).
  SpringSet(std::vector<double> x, std::vector<double> beta, bool allow_zero_strength = false);

  int size() const { return static_cast<int>(x.size()); }
  double min_separation() const;
};

/// sigma(t) = exp(-mu (t - t0)^2).
struct GaussianDensity {
  double mu = 40;
  double t0 = 2;
  double operator()(double t) const;
};

/// Incident wave u_inc(x,t) = f(x - t) with f(s) = exp(-mu (s - t0)^2).
struct IncidentPulse {
  double mu = 30;
  double t0 = -3;
  double f(double s) const;
  double operator()(double x, double t) const { return f(x - t); }
};

/// Positions uniform in [lo, hi] with pairwise separation >= min_sep,
/// by rejection sampling. Returned sorted.
std::vector<double> random_positions(int M, double lo, double hi, double min_sep, std::uint64_t seed);

std::vector<double> random_uniform(int M, double lo, double hi, std::uint64_t seed);

}  // namespace wfp
