#pragma once

#include <vector>

#include "wfp/field.hpp"

namespace wfp {

struct Spectrum {
  std::vector<double> omega;  ///< angular frequencies, ascending
  std::vector<double> mag;    ///< |u_hat(omega)|
};

/// max |a - b| over all samples; the grids must match.
double max_grid_error(const SpaceTimeField& a, const SpaceTimeField& b);

/// Least-squares slope of log(error) against log(dt), ignoring errors
/// within 10x of the floor. Needs at least three usable points.
double estimate_order(const std::vector<double>& errors, const std::vector<double>& dts,
                      double floor = 1e-12);

/// Taper weights: phi ramps over taper_fraction of the record at each end.
std::vector<double> spectral_taper(int n, double taper_fraction = 0.1, double b = 27.631021115928547);

/// One-sided |dt sum_n w_n s_n e^{i omega t_n}| at omega_m = 2 pi m / (N_pad dt),
/// where N_pad = pad_factor * N.
Spectrum windowed_spectrum(const std::vector<double>& signal, double dt, double taper_fraction = 0.1,
                           int pad_factor = 1);

/// sum mag^2 d omega over [lo, hi].
double spectrum_energy(const Spectrum& s, double lo, double hi);

/// Frequencies of the `count` largest local maxima, largest first, refined
/// by a parabola through log magnitudes. A maximum within min_separation of
/// a larger one is skipped.
std::vector<double> spectrum_peaks(const Spectrum& s, int count, double min_separation = 0);

/// omega_0 = sqrt(mean_beta / mean_spacing).
double klein_gordon_cutoff(double mean_beta, double mean_spacing);

}  // namespace wfp
