#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace wfp {

/// Bad user input (geometry, parameters, config files).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Breakdown during a run (NaN densities, singular solves).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Boundary { periodic, free_space };

Boundary parse_boundary(const std::string& s);
std::string to_string(Boundary bc);

struct WfpConfig {
  double dt = 0;
  double eps = 1e-12;
  double gamma = 0.5;
  double b = 0;
  double delta = 0;
  int W = 0;
  int K = 0;
  int nF = 0;
  int p = 6;
  int mMax = 0;
  int nL = 0;
  int nG = 16;
  int dtProj = 0;
  Boundary bc = Boundary::periodic;
};

WfpConfig derive_params(double eps, double gamma, double dt, int p, Boundary bc);

/// Builds a config with an explicit window width W instead of deriving it
/// from gamma. Used when the window timescale must be held fixed while dt
/// changes (tail measurements on a refined time grid).
WfpConfig config_with_window(double eps, int W, double dt, int p, Boundary bc);

/// dt = pi / ceil(K0 / (1 - gamma)).
double suggest_dt(double K0, double gamma);

/// Smallest K for which the Gaussian transform exp(-w^2/(4 mu)) drops below eps.
double gaussian_bandlimit(double mu, double eps);

struct GeometryReport {
  bool ok = true;
  std::vector<int> offending;
};

GeometryReport validate_geometry(const std::vector<double>& positions, const WfpConfig& cfg);

}  // namespace wfp
