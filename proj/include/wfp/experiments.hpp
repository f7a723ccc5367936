#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wfp/analysis.hpp"
#include "wfp/marcher.hpp"

namespace wfp {

// Manufactured-solution convergence sweep.

struct ConvergeOptions {
  int M = 10;
  std::vector<int> ps{2, 4, 6, 8};
  std::map<int, std::vector<double>> dts;  ///< per p
  double T = 6 * 3.141592653589793;
  double eps = 1e-14;
  double gamma = 0.5;
  int grid = 100;  ///< grid x grid space-time error samples
  double x_lo = -1, x_hi = 1, min_sep = 1e-4;
  double mu_lo = 40, mu_hi = 50;
  double t0_lo = 1, t0_hi = 3;
  double beta_lo = 0.1, beta_hi = 3;
};

struct ConvergeRow {
  int p = 0;
  double dt = 0;
  double error = 0;
  double seconds = 0;
};

struct ConvergeReport {
  std::vector<ConvergeRow> rows;
  std::map<int, double> order;  ///< absent when no fit was possible
};

struct ManufacturedProblem {
  SpringSet springs;
  std::vector<GaussianDensity> dens;
};

ManufacturedProblem make_manufactured(const ConvergeOptions& o, std::uint64_t seed);

/// Max error of a WFP run against the exact potential on the error grid.
double manufactured_error(const ManufacturedProblem& prob, const ConvergeOptions& o, int p, double dt);

ConvergeReport run_converge(const ConvergeOptions& o, std::uint64_t seed);

// Scattering runs.

struct SpringSpec {
  std::string kind = "random";  ///< explicit | random | equispaced
  int M = 0;
  double lo = -2, hi = 2, min_sep = 1e-4;
  double beta_lo = 0.1, beta_hi = 3;
  double beta = 1;  ///< equispaced strength
  std::vector<double> x, beta_list;
};

SpringSet build_springs(const SpringSpec& s, std::uint64_t seed);

struct SimulateOptions {
  SpringSpec springs;
  double mu = 30, t0 = -3;
  double T = 10 * 3.141592653589793;
  double eps = 1e-12, gamma = 0.5;
  double dt = 0;       ///< 0: chosen from ntyp
  double ntyp = 10;
  int p = 8;
  Boundary bc = Boundary::free_space;
  double x_lo = -3, x_hi = 3;
  int nx = 100, nt = 100;
  bool total_field = true;
  std::vector<double> probes;
  bool self_convergence = false;
};

struct SimulateReport {
  SpringSet springs;
  double dt = 0;
  SimulationResult result;
  double self_difference = -1;  ///< max grid difference to the dt/2 run, if requested
};

SimulateReport run_simulate(const SimulateOptions& o, std::uint64_t seed, std::ostream* diagnostics = nullptr);

// Spectra of the incident and transmitted signal at a probe.

struct TransmissionSpectra {
  double probe_x = 0;
  Spectrum incident, transmitted;
  double incident_energy = 0, transmitted_energy = 0;
};

/// Uses probe index `probe` of a run made with total_field = true.
TransmissionSpectra transmission_spectra(const SimulateReport& run, const SimulateOptions& o, int probe = 0,
                                         int pad_factor = 8, double taper_fraction = 0.1);

/// Energy of s outside the bands |omega - n pi / L| <= half_width, n >= 1.
double out_of_band_energy(const Spectrum& s, double L, double half_width);

// Cost scaling.

struct TimingOptions {
  std::vector<int> Ms{1000, 10000, 100000};
  double ntyp = 100;
  int steps = 60;  ///< the first steps - measured are warm-up
  int measured = 50;
  int p = 6;
  double eps = 1e-12, gamma = 0.5;
  double min_sep = 1e-6;
};

struct TimingRow {
  int M = 0;
  double dt = 0;
  double ntyp = 0;
  double median_ms = 0;
  double throughput = 0;  ///< scatterer-steps per second
};

struct TimingReport {
  std::vector<TimingRow> rows;
  double exponent = 0;  ///< 0 with fewer than two rows
};

TimingReport run_timing(const TimingOptions& o, std::uint64_t seed);

// Stability laboratory.

struct StabilityOptions {
  int decay_steps = 20000;
  int root_samples = 20;
  double kappa_max = 10;
  int bound_trials = 100;
  int bound_steps = 500;
  double conv_beta = 1, conv_L = 1, conv_T = 8;
  std::vector<double> conv_dts{0.2, 0.1, 0.05, 0.025};
};

struct StabilityRow {
  std::string check;   ///< group id
  std::string regime;
  std::string params;
  double max_root = -1;
  double bound_C = -1;
  double ratio = -1;
  double order = -1;
  bool expected = true;  ///< expected outcome (stable/decaying/within bound)
  bool observed = true;
  bool pass() const { return expected == observed; }
};

struct StabilityReport {
  std::vector<StabilityRow> rows;
  bool all_pass() const;
  bool group_pass(const std::string& check) const;
};

StabilityReport run_stability(const StabilityOptions& o, std::uint64_t seed);

/// Fitted log-log slope of y against x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace wfp
