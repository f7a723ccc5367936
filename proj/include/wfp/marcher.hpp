#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "wfp/config.hpp"
#include "wfp/density_history.hpp"
#include "wfp/field.hpp"
#include "wfp/history.hpp"
#include "wfp/local.hpp"
#include "wfp/potential.hpp"
#include "wfp/springs.hpp"
#include "wfp/window.hpp"

namespace wfp {

/// Source of the history part u_H. Positions passed to the engine are the
/// sorted spring positions the marcher works with.
class HistoryEngine {
 public:
  virtual ~HistoryEngine() = default;
  /// Moves from t_n to t_{n+1}; sigma holds sigma^n.
  virtual void advance(std::span<const double> sigma) = 0;
  /// u_H at the springs at the current time.
  virtual void eval_springs(std::span<double> out) = 0;
  /// u_H at arbitrary points at the current time.
  virtual void eval(std::span<const double> x, std::span<double> out) = 0;
  virtual void snapshot(std::ostream&) const {}
  virtual void restore(std::istream&) {}
  virtual size_t footprint() const { return 0; }
};

/// Rolls the history field off near +-pi with outgoing phase.
void rbc_project(HistoryState& state, const Window& window, const WfpConfig& cfg);

/// Fourier history: type 1 NUFFT, exact mode recurrences, type 2 NUFFT.
class FourierHistory : public HistoryEngine {
 public:
  FourierHistory(std::vector<double> x, const Window& window, const WfpConfig& cfg);

  void advance(std::span<const double> sigma) override;
  void eval_springs(std::span<double> out) override;
  void eval(std::span<const double> x, std::span<double> out) override;
  void snapshot(std::ostream& out) const override;
  void restore(std::istream& in) override;
  size_t footprint() const override;

  const HistoryState& state() const { return state_; }
  const StepKernels& kernels() const { return kern_; }

 private:
  WfpConfig cfg_;
  const Window* window_;
  StepKernels kern_;
  HistoryState state_;
  NufftPlan plan_;
  ModeVector sk_, h_, g_;
};

/// Field sampler for a fixed set of targets.
class Probe {
 public:
  Probe(std::vector<double> x, std::vector<double> springs_sorted, const LocalWeightBuilder& builder);
  const std::vector<double>& x() const { return x_; }

 private:
  friend class Marcher;
  std::vector<double> x_;
  TargetLocalOperator local_;
};

/// WFP time stepper. Springs are sorted internally; all inputs and outputs
/// use the caller's ordering.
class Marcher {
 public:
  Marcher(const SpringSet& springs, const WfpConfig& cfg,
          std::unique_ptr<HistoryEngine> engine = nullptr);
  Marcher(const Marcher&) = delete;
  Marcher& operator=(const Marcher&) = delete;

  const WfpConfig& config() const { return cfg_; }
  const Window& window() const { return *window_; }
  long step_index() const { return n_; }
  double time() const { return n_ * cfg_.dt; }
  int springs() const { return static_cast<int>(perm_.size()); }

  /// Advances one step with data g^{n+1} (caller's ordering).
  void step(std::span<const double> g);

  /// sigma^n in caller's ordering.
  std::vector<double> density() const;

  Probe make_probe(std::vector<double> x) const;
  /// Scattered field at the probe targets at the current time.
  void sample(const Probe& probe, std::span<double> out);

  void snapshot(std::ostream& out) const;
  void restore(std::istream& in);

  /// Numbers held in time-dependent state containers.
  size_t state_footprint() const;
  const LocalOperators& local() const { return *local_; }
  double ntyp() const { return local_->mean_neighbors(); }

 private:
  WfpConfig cfg_;
  std::vector<int> perm_;  // sorted slot -> caller index
  std::vector<double> x_, beta_;
  std::unique_ptr<Window> window_;
  std::unique_ptr<LocalWeightBuilder> builder_;
  std::unique_ptr<LocalOperators> local_;
  std::unique_ptr<HistoryEngine> engine_;
  DensityHistory dens_;
  std::vector<double> sigma_, rhs_, uh_;
  long n_ = 0;
};

/// Which driving data a simulation uses.
struct SimulationSetup {
  SpringSet springs;
  std::optional<IncidentPulse> incident;  ///< scattering problem
  DataFn data;                             ///< otherwise: g_j(t) in physical units
  double eps = 1e-12;
  double gamma = 0.5;
  double dt = 0.01;
  int p = 6;
  Boundary bc = Boundary::free_space;
  double T = 1;
  std::vector<double> target_x;  ///< field grid (physical)
  std::vector<double> output_t;  ///< snapped to step times
  bool total_field = false;
  std::vector<double> probes;    ///< sampled at every step
  bool record_density = false;
  std::ostream* diagnostics = nullptr;  ///< JSON lines per step
};

struct SimulationResult {
  SpaceTimeField field;
  std::vector<double> probe_t;
  std::vector<std::vector<double>> probe_u;  ///< [probe][step]
  DensitySeries density;                     ///< physical units, if recorded
  std::vector<double> step_ms;
  double ntyp = 0;
  double scale = 1;  ///< x' = scale * x inside the solver
  WfpConfig cfg;     ///< solver-frame configuration
};

/// Affine factor mapping [-A, A] into [-pi + 3 delta, pi - 3 delta].
double domain_scale(double A, double delta);

/// W = round(2 ln(1/eps) / (pi gamma)), at least 1.
int window_width(double eps, double gamma);

SimulationResult simulate(const SimulationSetup& setup);

/// dt giving a mean delta-neighbor count close to ntyp for these positions.
double dt_for_ntyp(const std::vector<double>& x, double ntyp, double eps, double gamma);

/// Mean number of springs within delta (self included).
double mean_neighbors(const std::vector<double>& x, double delta);

}  // namespace wfp
