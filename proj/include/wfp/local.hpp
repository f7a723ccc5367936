#pragma once

#include <memory>
#include <vector>

#include "wfp/config.hpp"
#include "wfp/density_history.hpp"
#include "wfp/window.hpp"

namespace wfp {

/// Distance to the nearest 2 pi-periodic image.
double periodic_dist(double x, double xj);

struct NeighborSets {
  std::vector<int> nearby;        ///< dist < dt
  std::vector<int> intermediate;  ///< dt <= dist < delta
};

/// Neighbor sets of each target among the given springs (indices refer to
/// the order of `springs`).
std::vector<NeighborSets> classify_neighbors(const std::vector<double>& springs,
                                             const std::vector<double>& targets, double dt, double delta);

/// Q_m(d), m = mMin..mMax: quadrature weights mapping the recent densities
/// sigma^{n+1-m} to int_d^delta (1 - phi(s)) sigma(t_{n+1} - s) ds.
struct LocalWeightTable {
  double d = 0;
  int mMin = 0, mMax = 0;
  std::vector<double> q;  ///< q[m - mMin]
  double Q(int m) const { return m < mMin || m > mMax ? 0.0 : q[m - mMin]; }
};

class LocalWeightBuilder {
 public:
  LocalWeightBuilder(const WfpConfig& cfg, const Window& window);

  const WfpConfig& config() const { return cfg_; }
  /// Writes Q_m for m = 0..mMax into out (entries below mMin are zero) and
  /// returns mMin.
  int weights(double d, double* out) const;
  LocalWeightTable table(double d) const;

 private:
  WfpConfig cfg_;
  PhiTable phi_;
  GaussRule ref_;  // nL nodes on [-1,1]
};

/// Table for distance d. t_ref (the step time t_{n+1}) drops out because the
/// weights are computed in lag coordinates.
LocalWeightTable local_weights(double d, const WfpConfig& cfg, double t_ref = 0.0);

/// Sparse local coupling between springs (sorted positions):
///   S_jl   = (beta_j/2) Q_0(d_jl)          for d_jl < dt
///   C^m_jl = (beta_j/2) Q_m(d_jl), m >= 1  for d_jl < delta
/// Weights are stored once per unordered pair since they depend only on
/// distance; beta enters at application time.
class LocalOperators {
 public:
  LocalOperators(const std::vector<double>& x, const std::vector<double>& beta,
                 const LocalWeightBuilder& builder);

  /// out_j = sum_l sum_{m>=1} C^m_jl sigma_l^{n+1-m}. The history holds
  /// sigma^n as its most recent entry.
  void apply_explicit(const DensityHistory& hist, double* out) const;

  /// Solves (I + S) y = b in place.
  void solve(double* b) const;

  double S(int j, int l) const;
  double C(int m, int j, int l) const;
  int bandwidth() const { return std::max(kl_, ku_); }
  bool banded() const { return !sparse_; }
  size_t stored_weights() const { return values_.size(); }
  size_t pair_count() const { return pairs_.size(); }
  double mean_neighbors() const;

 private:
  struct Pair {
    int j, l;
    int mlo, count;  // m range of stored C weights (m >= 1)
    size_t off;
    double q0;       // S weight without beta, 0 if not nearby
  };
  void factor();

  int M_, mMax_;
  std::vector<double> beta_;
  std::vector<Pair> pairs_;
  std::vector<double> values_;
  // banded LU of I+S
  int kl_ = 0, ku_ = 0;
  std::vector<double> band_;
  bool sparse_ = false;
  struct SparseLU;
  std::shared_ptr<SparseLU> slu_;
};

/// Local part of the field at fixed off-grid targets.
class TargetLocalOperator {
 public:
  TargetLocalOperator(const std::vector<double>& targets, const std::vector<double>& springs,
                      const LocalWeightBuilder& builder);

  /// out_i = (1/2) sum_l sum_m Q_m(d_il) sigma_l^{n+1-m}. The history holds
  /// sigma^{n+1} as its most recent entry.
  void apply(const DensityHistory& hist, double* out) const;
  int targets() const { return T_; }

 private:
  struct Entry {
    int i, l, mlo, count;
    size_t off;
  };
  int T_;
  std::vector<Entry> entries_;
  std::vector<double> values_;
};

}  // namespace wfp
