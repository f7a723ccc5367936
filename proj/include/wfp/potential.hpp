#pragma once

#include <functional>
#include <vector>

#include "wfp/config.hpp"
#include "wfp/field.hpp"
#include "wfp/quadrature.hpp"
#include "wfp/springs.hpp"

namespace wfp {

/// 1/2 H(t - |x|), H(0) = 1.
double greens_free(double x, double t);

/// Closed-form single-layer potential of Gaussian densities in free space.
double slp_gaussian_exact(const SpringSet& springs, const std::vector<GaussianDensity>& dens,
                          double x, double t);

/// Sum of slp_gaussian_exact over all causally reachable 2 pi images.
double slp_gaussian_exact_periodic(const SpringSet& springs, const std::vector<GaussianDensity>& dens,
                                   double x, double t);

/// g_j(t) = -sigma_j(t) - beta_j u_ex(x_j, t).
std::vector<double> manufactured_data(const SpringSet& springs, const std::vector<GaussianDensity>& dens,
                                      double t, Boundary bc = Boundary::free_space);

/// Densities on a uniform grid: sigma[n][j] = sigma_j(n dt), n = 0..N.
struct DensitySeries {
  double dt = 0;
  std::vector<std::vector<double>> sigma;

  int steps() const { return static_cast<int>(sigma.size()) - 1; }
  int springs() const { return sigma.empty() ? 0 : static_cast<int>(sigma[0].size()); }
};

/// Exact integration of the piecewise degree-(p-1) interpolant of a grid
/// sequence. Piece i = [t_i, t_{i+1}] uses grid points
/// i+1-ceil(p/2) .. i+p-ceil(p/2) (left endpoint for p = 1), shifted back so
/// that no index exceeds the available one. Indices below zero read as 0.
class InterpIntegrator {
 public:
  explicit InterpIntegrator(int p);
  int p() const { return p_; }

  /// Weights w[0..p-1] on indices lo..lo+p-1 such that the integral of the
  /// interpolant over [t_i + a dt, t_i + b dt] is dt * sum w_r sigma^{lo+r}.
  int piece_weights(int i, double a, double b, int avail, double* w) const;

  /// Integral of the interpolant over [0, T] for one component of a series.
  double integral(const std::function<double(int)>& sigma, double dt, double T, int avail) const;

 private:
  int p_;
  int lo_offset_;
  GaussRule rule_;  // on [0,1]
  std::vector<double> full_;
};

/// Driving data g_j(t) for all springs at time t.
using DataFn = std::function<std::vector<double>(double t)>;

/// Direct marching of the free-space Volterra system with O(M^2 N_t) cost.
DensitySeries reference_march_free(const SpringSet& springs, const DataFn& g, int p, double dt, double T);

/// Same for the 2 pi-periodic system, images |m| <= image_count included
/// whenever they are causally reachable.
DensitySeries reference_march_periodic(const SpringSet& springs, const DataFn& g, int p, double dt,
                                       double T, int image_count);

/// Single-layer potential of a density series at targets x and times t.
SpaceTimeField eval_scattered_field(const DensitySeries& dens, const SpringSet& springs, int p,
                                    const std::vector<double>& x, const std::vector<double>& t,
                                    Boundary bc);

}  // namespace wfp
