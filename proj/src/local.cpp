#include "wfp/local.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <numeric>
#include <ostream>

#include "wfp/quadrature.hpp"

namespace wfp {

namespace {
constexpr double kTwoPi = 2 * std::numbers::pi;
}

DensityHistory::DensityHistory(int M, int depth)
    : M_(M), D_(depth), head_(0), buf_(static_cast<size_t>(M) * 2 * depth, 0.0) {}

void DensityHistory::push(const double* sigma) {
  head_ = (head_ + D_ - 1) % D_;
  const size_t stride = 2 * static_cast<size_t>(D_);
  for (int l = 0; l < M_; ++l) {
    buf_[l * stride + head_] = sigma[l];
    buf_[l * stride + head_ + D_] = sigma[l];
  }
}

void DensityHistory::snapshot(std::ostream& out) const {
  int hdr[3] = {M_, D_, head_};
  out.write(reinterpret_cast<const char*>(hdr), sizeof hdr);
  out.write(reinterpret_cast<const char*>(buf_.data()), static_cast<std::streamsize>(buf_.size() * sizeof(double)));
}

void DensityHistory::restore(std::istream& in) {
  int hdr[3];
  in.read(reinterpret_cast<char*>(hdr), sizeof hdr);
  if (!in || hdr[0] < 0 || hdr[1] < 1) throw ValidationError("corrupt density snapshot");
  M_ = hdr[0];
  D_ = hdr[1];
  head_ = hdr[2];
  buf_.assign(static_cast<size_t>(M_) * 2 * D_, 0.0);
  in.read(reinterpret_cast<char*>(buf_.data()), static_cast<std::streamsize>(buf_.size() * sizeof(double)));
  if (!in) throw ValidationError("truncated density snapshot");
}

double periodic_dist(double x, double xj) {
  double d = std::remainder(x - xj, kTwoPi);
  return std::abs(d);
}

std::vector<NeighborSets> classify_neighbors(const std::vector<double>& springs,
                                             const std::vector<double>& targets, double dt, double delta) {
  const int M = static_cast<int>(springs.size());
  std::vector<int> order(M);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return springs[a] < springs[b]; });
  std::vector<double> sorted(M);
  for (int i = 0; i < M; ++i) sorted[i] = springs[order[i]];

  std::vector<NeighborSets> out(targets.size());
  for (size_t t = 0; t < targets.size(); ++t) {
    const double x = targets[t];
    for (int m = -1; m <= 1; ++m) {
      double lo = x - delta - kTwoPi * m, hi = x + delta - kTwoPi * m;
      auto a = std::lower_bound(sorted.begin(), sorted.end(), lo);
      auto b = std::upper_bound(sorted.begin(), sorted.end(), hi);
      for (auto it = a; it < b; ++it) {
        int l = order[it - sorted.begin()];
        double d = periodic_dist(x, springs[l]);
        if (d < dt)
          out[t].nearby.push_back(l);
        else if (d < delta)
          out[t].intermediate.push_back(l);
      }
    }
    std::sort(out[t].nearby.begin(), out[t].nearby.end());
    std::sort(out[t].intermediate.begin(), out[t].intermediate.end());
  }
  return out;
}

LocalWeightBuilder::LocalWeightBuilder(const WfpConfig& cfg, const Window& window)
    : cfg_(cfg), phi_(window), ref_(gauss_legendre(cfg.nL)) {}

int LocalWeightBuilder::weights(double d, double* out) const {
  const double dt = cfg_.dt, delta = cfg_.delta;
  const int mMax = cfg_.mMax, p = cfg_.p;
  const int mMin = d < dt ? 0 : 1;
  for (int m = 0; m <= mMax; ++m) out[m] = 0.0;
  if (d >= delta || delta - d < 1e-14 * dt) return mMin;
  const double h = 0.5 * (delta - d), c = 0.5 * (delta + d);
  double v[32];
  for (int g = 0; g < ref_.n; ++g) {
    double s = c + h * ref_.nodes[g];
    double w = h * ref_.weights[g] * (1.0 - phi_(s));
    // time index of grid point t_{n+1-m} relative to t_{n+1} is -m
    int first = lagrange_stencil(-s / dt, -mMax, -mMin, p, v);
    for (int r = 0; r < p; ++r) out[-(first + r)] += w * v[r];
  }
  return mMin;
}

LocalWeightTable LocalWeightBuilder::table(double d) const {
  std::vector<double> q(cfg_.mMax + 1);
  LocalWeightTable t;
  t.d = d;
  t.mMin = weights(d, q.data());
  t.mMax = cfg_.mMax;
  t.q.assign(q.begin() + t.mMin, q.end());
  return t;
}

LocalWeightTable local_weights(double d, const WfpConfig& cfg, double /*t_ref*/) {
  Window w(cfg.delta, cfg.b, std::max(2 * cfg.W, 32));
  return LocalWeightBuilder(cfg, w).table(d);
}

struct LocalOperators::SparseLU {
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
};

LocalOperators::LocalOperators(const std::vector<double>& x, const std::vector<double>& beta,
                               const LocalWeightBuilder& builder)
    : M_(static_cast<int>(x.size())), mMax_(builder.config().mMax), beta_(beta) {
  const WfpConfig& cfg = builder.config();
  auto nb = classify_neighbors(x, x, cfg.dt, cfg.delta);
  std::vector<double> q(mMax_ + 1);
  size_t reserve = 0;
  for (int j = 0; j < M_; ++j) reserve += nb[j].nearby.size() + nb[j].intermediate.size();
  pairs_.reserve(reserve / 2 + M_);
  for (int j = 0; j < M_; ++j) {
    for (const auto* set : {&nb[j].nearby, &nb[j].intermediate}) {
      for (int l : *set) {
        if (l < j) continue;
        double d = periodic_dist(x[j], x[l]);
        int mMin = builder.weights(d, q.data());
        Pair pr{j, l, 1, 0, values_.size(), mMin == 0 ? q[0] : 0.0};
        int lo = 1, hi = mMax_;
        while (lo <= hi && q[lo] == 0.0) ++lo;
        while (hi >= lo && q[hi] == 0.0) --hi;
        if (hi >= lo) {
          pr.mlo = lo;
          pr.count = hi - lo + 1;
          values_.insert(values_.end(), q.begin() + lo, q.begin() + hi + 1);
        }
        pairs_.push_back(pr);
      }
    }
  }
  std::sort(pairs_.begin(), pairs_.end(), [](const Pair& a, const Pair& b) {
    return a.j != b.j ? a.j < b.j : a.l < b.l;
  });
  factor();
}

double LocalOperators::mean_neighbors() const {
  if (M_ == 0) return 0.0;
  return (2.0 * pairs_.size() - M_) / M_;
}

void LocalOperators::factor() {
  kl_ = ku_ = 0;
  for (const Pair& p : pairs_)
    if (p.q0 != 0.0) {
      kl_ = std::max(kl_, p.l - p.j);
      ku_ = std::max(ku_, p.l - p.j);
    }
  const int bw = kl_ + ku_ + 1;
  sparse_ = static_cast<long>(kl_) > 64 && static_cast<long>(kl_) * 4 > M_;
  if (!sparse_) {
    band_.assign(static_cast<size_t>(M_) * bw, 0.0);
    auto a = [&](int i, int j) -> double& { return band_[static_cast<size_t>(i) * bw + (j - i + kl_)]; };
    for (int i = 0; i < M_; ++i) a(i, i) = 1.0;
    for (const Pair& p : pairs_) {
      if (p.q0 == 0.0) continue;
      a(p.j, p.l) += 0.5 * beta_[p.j] * p.q0;
      if (p.l != p.j) a(p.l, p.j) += 0.5 * beta_[p.l] * p.q0;
    }
    double scale = 0;
    for (double v : band_) scale = std::max(scale, std::abs(v));
    bool ok = true;
    for (int k = 0; k < M_ && ok; ++k) {
      double piv = a(k, k);
      if (!(std::abs(piv) > 1e-14 * scale)) {
        ok = false;
        break;
      }
      int iend = std::min(k + kl_, M_ - 1), jend = std::min(k + ku_, M_ - 1);
      for (int i = k + 1; i <= iend; ++i) {
        double& lik = a(i, k);
        if (lik == 0.0) continue;
        lik /= piv;
        for (int j = k + 1; j <= jend; ++j) a(i, j) -= lik * a(k, j);
      }
    }
    if (ok) return;
    sparse_ = true;
  }
  std::vector<Eigen::Triplet<double>> trip;
  for (int i = 0; i < M_; ++i) trip.emplace_back(i, i, 1.0);
  for (const Pair& p : pairs_) {
    if (p.q0 == 0.0) continue;
    trip.emplace_back(p.j, p.l, 0.5 * beta_[p.j] * p.q0);
    if (p.l != p.j) trip.emplace_back(p.l, p.j, 0.5 * beta_[p.l] * p.q0);
  }
  Eigen::SparseMatrix<double> A(M_, M_);
  A.setFromTriplets(trip.begin(), trip.end());
  slu_ = std::make_shared<SparseLU>();
  slu_->lu.compute(A);
  if (slu_->lu.info() != Eigen::Success)
    throw NumericalError("I+S is numerically singular; check dt, strengths and geometry");
}

void LocalOperators::solve(double* b) const {
  if (sparse_) {
    Eigen::Map<Eigen::VectorXd> v(b, M_);
    Eigen::VectorXd y = slu_->lu.solve(v);
    v = y;
    return;
  }
  const int bw = kl_ + ku_ + 1;
  auto a = [&](int i, int j) { return band_[static_cast<size_t>(i) * bw + (j - i + kl_)]; };
  for (int i = 0; i < M_; ++i) {
    double s = b[i];
    for (int k = std::max(0, i - kl_); k < i; ++k) s -= a(i, k) * b[k];
    b[i] = s;
  }
  for (int i = M_ - 1; i >= 0; --i) {
    double s = b[i];
    int jend = std::min(i + ku_, M_ - 1);
    for (int j = i + 1; j <= jend; ++j) s -= a(i, j) * b[j];
    b[i] = s / a(i, i);
  }
}

void LocalOperators::apply_explicit(const DensityHistory& hist, double* out) const {
  std::fill(out, out + M_, 0.0);
  for (const Pair& p : pairs_) {
    if (p.count == 0) continue;
    const double* q = &values_[p.off];
    const double* wl = hist.window(p.l) + (p.mlo - 1);
    double s = 0;
    for (int r = 0; r < p.count; ++r) s += q[r] * wl[r];
    out[p.j] += 0.5 * beta_[p.j] * s;
    if (p.l != p.j) {
      const double* wj = hist.window(p.j) + (p.mlo - 1);
      double s2 = 0;
      for (int r = 0; r < p.count; ++r) s2 += q[r] * wj[r];
      out[p.l] += 0.5 * beta_[p.l] * s2;
    }
  }
}

double LocalOperators::S(int j, int l) const {
  for (const Pair& p : pairs_)
    if ((p.j == j && p.l == l) || (p.j == l && p.l == j)) return 0.5 * beta_[j] * p.q0;
  return 0.0;
}

double LocalOperators::C(int m, int j, int l) const {
  for (const Pair& p : pairs_)
    if ((p.j == j && p.l == l) || (p.j == l && p.l == j)) {
      if (m < p.mlo || m >= p.mlo + p.count) return 0.0;
      return 0.5 * beta_[j] * values_[p.off + (m - p.mlo)];
    }
  return 0.0;
}

TargetLocalOperator::TargetLocalOperator(const std::vector<double>& targets,
                                         const std::vector<double>& springs,
                                         const LocalWeightBuilder& builder)
    : T_(static_cast<int>(targets.size())) {
  const WfpConfig& cfg = builder.config();
  auto nb = classify_neighbors(springs, targets, cfg.dt, cfg.delta);
  std::vector<double> q(cfg.mMax + 1);
  for (int i = 0; i < T_; ++i) {
    for (const auto* set : {&nb[i].nearby, &nb[i].intermediate}) {
      for (int l : *set) {
        builder.weights(periodic_dist(targets[i], springs[l]), q.data());
        int lo = 0, hi = cfg.mMax;
        while (lo <= hi && q[lo] == 0.0) ++lo;
        while (hi >= lo && q[hi] == 0.0) --hi;
        if (hi < lo) continue;
        entries_.push_back({i, l, lo, hi - lo + 1, values_.size()});
        values_.insert(values_.end(), q.begin() + lo, q.begin() + hi + 1);
      }
    }
  }
}

void TargetLocalOperator::apply(const DensityHistory& hist, double* out) const {
  std::fill(out, out + T_, 0.0);
  for (const Entry& e : entries_) {
    const double* q = &values_[e.off];
    const double* w = hist.window(e.l) + e.mlo;
    double s = 0;
    for (int r = 0; r < e.count; ++r) s += q[r] * w[r];
    out[e.i] += 0.5 * s;
  }
}

}  // namespace wfp
