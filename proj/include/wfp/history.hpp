#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "wfp/config.hpp"
#include "wfp/nufft.hpp"
#include "wfp/window.hpp"

namespace wfp {

/// One-step integrated influence kernels p_k(m dt), q_k(m dt) for
/// k = 0..K (both are even in k) and m = 0..W-1, plus the per-mode
/// rotation coefficients of the homogeneous propagator.
struct StepKernels {
  int K = 0, W = 0;
  double dt = 0;
  std::vector<double> p, q;  // index m*(K+1) + k
  std::vector<double> cos_kdt, sin_kdt_over_k, k_sin_kdt;

  double pk(int k, int m) const { return p[static_cast<size_t>(m) * (K + 1) + std::abs(k)]; }
  double qk(int k, int m) const { return q[static_cast<size_t>(m) * (K + 1) + std::abs(k)]; }
};

StepKernels precompute_kernels(const Window& window, const WfpConfig& cfg);

/// (1/2pi) sum_j sigma_j e^{i k x_j}.
ModeVector compute_sk(std::span<const double> x, std::span<const double> sigma, int K, double eps);

class HistoryState {
 public:
  HistoryState() = default;
  HistoryState(int K, int W);

  ModeVector alpha, alpha_prime;
  long n = 0;

  int K() const { return alpha.K; }
  int depth() const { return static_cast<int>(ring_.size()); }
  /// S_k(t_{n-1-m}) for m = 0..depth-1 (most recent first).
  const ModeVector& stack(int m) const;
  /// Pushes a new most-recent entry; the oldest is dropped. The argument
  /// receives the dropped buffer so its storage can be reused.
  void push_sk(ModeVector& s);

  void snapshot(std::ostream& out) const;
  static HistoryState restore(std::istream& in);
  size_t footprint() const;

 private:
  std::vector<ModeVector> ring_;
  int head_ = 0;
};

/// h_k = dt sum_m p_k(m dt) S_k(t_{n-m}), likewise g with q. m = 0 reads
/// sk_new = S_k(t_n); m >= 1 reads state.stack(m-1).
void step_hg(const StepKernels& kern, const HistoryState& state, const ModeVector& sk_new,
             ModeVector& h, ModeVector& g);

/// Exact propagation of (alpha, alpha') over one step, driven by (h, g).
void advance_alpha(HistoryState& state, const ModeVector& h, const ModeVector& g, double dt);
void advance_alpha(const StepKernels& kern, HistoryState& state, const ModeVector& h, const ModeVector& g);

std::vector<double> eval_history(const HistoryState& state, std::span<const double> targets, double eps);

/// Accumulates the time series of tail modes K < |k| <= K_big.
class TailMonitor {
 public:
  TailMonitor(int K, int K_big, std::vector<int> sampled_modes);
  void record(const ModeVector& alpha, double t);

  double tail_l2() const;                 ///< || sum_{|k|>K} |alpha_k| ||_{L2}
  std::vector<double> mode_l2() const;    ///< ||alpha_k||_{L2} per sampled mode
  const std::vector<int>& sampled() const { return sampled_; }

 private:
  int K_, K_big_;
  std::vector<int> sampled_;
  std::vector<double> t_, tail_;
  std::vector<std::vector<double>> modes_;
};

struct TailReport {
  double measured = 0;
  double bound = 0;
  bool hypothesis = false;  ///< K >= K0 + 2b/delta
  std::vector<int> modes;
  std::vector<double> mode_measured, mode_bound;
  bool holds() const;
};

TailReport truncation_tail(const TailMonitor& mon, int K, double K0, double C, int M, double T,
                           const Window& window);

/// Runs the history engine alone on prescribed densities with a refined
/// configuration (K_big = cfg_fine.K) and reports the tail of modes |k| > K.
TailReport measure_truncation_tail(std::span<const double> x,
                                   const std::function<void(double, std::vector<double>&)>& sigma,
                                   const WfpConfig& cfg_fine, int K, double K0, double C, double T,
                                   std::vector<int> sampled_modes);

}  // namespace wfp
