#include "wfp/history.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <numbers>
#include <ostream>

#include "wfp/special.hpp"

namespace wfp {

namespace {

struct Rotation {
  double c, a, b;  // [[c, a], [-b, c]] acting on (alpha, alpha')
};

// Correctly rounded cos/sin leave c^2 + a b off 1 by an ulp, which compounds
// linearly over many steps; take the sine from the rounded cosine instead.
Rotation rotation(int k, double dt) {
  if (k == 0) return {1.0, dt, 0.0};
  long double th = static_cast<long double>(k) * dt;
  double c = static_cast<double>(std::cos(th));
  long double sn = std::sqrt(std::max(0.0L, 1.0L - static_cast<long double>(c) * c));
  if (std::sin(th) < 0) sn = -sn;
  double a0 = static_cast<double>(sn / k), b0 = static_cast<double>(k * sn);
  auto nb = [](double v, int i) {
    for (; i > 0; --i) v = std::nextafter(v, HUGE_VAL);
    for (; i < 0; ++i) v = std::nextafter(v, -HUGE_VAL);
    return v;
  };
  Rotation best{c, a0, b0};
  long double bestd = HUGE_VALL;
  for (int j = -3; j <= 3; ++j)
    for (int l = -3; l <= 3; ++l) {
      double a = nb(a0, j), b = nb(b0, l);
      long double d = std::abs(static_cast<long double>(c) * c + static_cast<long double>(a) * b - 1.0L);
      if (d < bestd) best = {c, a, b}, bestd = d;
    }
  return best;
}

// extended-precision accumulation keeps per-step rounding unbiased
void rotate(cplx& al, cplx& ap, const Rotation& r) {
  using L = long double;
  L xr = al.real(), xi = al.imag(), yr = ap.real(), yi = ap.imag();
  L c = r.c, a = r.a, b = r.b;
  al = {static_cast<double>(c * xr + a * yr), static_cast<double>(c * xi + a * yi)};
  ap = {static_cast<double>(c * yr - b * xr), static_cast<double>(c * yi - b * xi)};
}

}  // namespace

StepKernels precompute_kernels(const Window& window, const WfpConfig& cfg) {
  StepKernels s;
  s.K = cfg.K;
  s.W = cfg.W;
  s.dt = cfg.dt;
  const int K = cfg.K, W = cfg.W, nG = cfg.nG;
  const double dt = cfg.dt;
  GaussRule rule = gauss_legendre(nG, 0.0, dt);

  std::vector<double> fp(static_cast<size_t>(W) * nG), fpp(fp.size()), tau(fp.size());
  for (int m = 0; m < W; ++m)
    for (int g = 0; g < nG; ++g) {
      double t = m * dt + rule.nodes[g];
      tau[m * nG + g] = t;
      fp[m * nG + g] = window.phi_prime(t);
      fpp[m * nG + g] = window.phi_dprime(t);
    }

  s.p.assign(static_cast<size_t>(W) * (K + 1), 0.0);
  s.q.assign(s.p.size(), 0.0);
  std::vector<double> sw(nG), cw(nG);
  for (int k = 0; k <= K; ++k) {
    for (int g = 0; g < nG; ++g) {
      double r = dt - rule.nodes[g];
      sw[g] = rule.weights[g] * sin_over_k(k, r);
      cw[g] = rule.weights[g] * std::cos(k * r);
    }
    for (int m = 0; m < W; ++m) {
      double pv = 0, qv = 0;
      for (int g = 0; g < nG; ++g) {
        double t = tau[m * nG + g];
        double psi = 2 * std::cos(k * t) * fp[m * nG + g] + sin_over_k(k, t) * fpp[m * nG + g];
        pv += sw[g] * psi;
        qv += cw[g] * psi;
      }
      s.p[static_cast<size_t>(m) * (K + 1) + k] = pv;
      s.q[static_cast<size_t>(m) * (K + 1) + k] = qv;
    }
  }

  s.cos_kdt.resize(K + 1);
  s.sin_kdt_over_k.resize(K + 1);
  s.k_sin_kdt.resize(K + 1);
  for (int k = 0; k <= K; ++k) {
    Rotation r = rotation(k, dt);
    s.cos_kdt[k] = r.c;
    s.sin_kdt_over_k[k] = r.a;
    s.k_sin_kdt[k] = r.b;
  }
  return s;
}

ModeVector compute_sk(std::span<const double> x, std::span<const double> sigma, int K, double eps) {
  NufftPlan plan(std::vector<double>(x.begin(), x.end()), K, eps);
  ModeVector s(K);
  plan.type1(sigma, s);
  const double scale = 1.0 / (2 * std::numbers::pi);
  for (auto& c : s.c) c *= scale;
  return s;
}

HistoryState::HistoryState(int K, int W) : alpha(K), alpha_prime(K), ring_(W, ModeVector(K)) {}

const ModeVector& HistoryState::stack(int m) const {
  int d = depth();
  return ring_[(head_ + m) % d];
}

void HistoryState::push_sk(ModeVector& s) {
  int d = depth();
  head_ = (head_ + d - 1) % d;
  std::swap(ring_[head_], s);
}

namespace {

void put_i64(std::ostream& out, std::int64_t v) { out.write(reinterpret_cast<const char*>(&v), 8); }
std::int64_t get_i64(std::istream& in) {
  std::int64_t v = 0;
  in.read(reinterpret_cast<char*>(&v), 8);
  return v;
}
void put_modes(std::ostream& out, const ModeVector& m) {
  out.write(reinterpret_cast<const char*>(m.c.data()), static_cast<std::streamsize>(m.c.size() * sizeof(cplx)));
}
void get_modes(std::istream& in, ModeVector& m) {
  in.read(reinterpret_cast<char*>(m.c.data()), static_cast<std::streamsize>(m.c.size() * sizeof(cplx)));
}

}  // namespace

void HistoryState::snapshot(std::ostream& out) const {
  put_i64(out, K());
  put_i64(out, n);
  put_i64(out, depth());
  put_modes(out, alpha);
  put_modes(out, alpha_prime);
  for (int m = 0; m < depth(); ++m) put_modes(out, stack(m));
}

HistoryState HistoryState::restore(std::istream& in) {
  int K = static_cast<int>(get_i64(in));
  long n = static_cast<long>(get_i64(in));
  int W = static_cast<int>(get_i64(in));
  if (!in || K < 0 || W < 1) throw ValidationError("corrupt history snapshot");
  HistoryState s(K, W);
  s.n = n;
  get_modes(in, s.alpha);
  get_modes(in, s.alpha_prime);
  for (int m = 0; m < W; ++m) get_modes(in, s.ring_[m]);
  if (!in) throw ValidationError("truncated history snapshot");
  return s;
}

size_t HistoryState::footprint() const {
  return alpha.c.size() + alpha_prime.c.size() + ring_.size() * alpha.c.size();
}

void step_hg(const StepKernels& kern, const HistoryState& state, const ModeVector& sk_new,
             ModeVector& h, ModeVector& g) {
  const int K = kern.K, W = kern.W;
  if (state.depth() != W) throw std::invalid_argument("step_hg: stack depth differs from W");
  if (h.K != K) h = ModeVector(K);
  if (g.K != K) g = ModeVector(K);
  h.zero();
  g.zero();
  cplx* hp = h.c.data() + K;  // hp[k] for k in -K..K
  cplx* gp = g.c.data() + K;
  for (int m = 0; m < W; ++m) {
    const ModeVector& S = m == 0 ? sk_new : state.stack(m - 1);
    const cplx* sp = S.c.data() + K;
    const double* pm = &kern.p[static_cast<size_t>(m) * (K + 1)];
    const double* qm = &kern.q[static_cast<size_t>(m) * (K + 1)];
    for (int k = 0; k <= K; ++k) {
      hp[k] += pm[k] * sp[k];
      gp[k] += qm[k] * sp[k];
    }
    for (int k = 1; k <= K; ++k) {
      hp[-k] += pm[k] * sp[-k];
      gp[-k] += qm[k] * sp[-k];
    }
  }
  for (auto& v : h.c) v *= kern.dt;
  for (auto& v : g.c) v *= kern.dt;
}

void advance_alpha(const StepKernels& kern, HistoryState& state, const ModeVector& h, const ModeVector& g) {
  const int K = kern.K;
  for (int k = -K; k <= K; ++k) {
    int a = std::abs(k);
    rotate(state.alpha[k], state.alpha_prime[k], {kern.cos_kdt[a], kern.sin_kdt_over_k[a], kern.k_sin_kdt[a]});
    state.alpha[k] += h[k];
    state.alpha_prime[k] += g[k];
  }
  ++state.n;
}

void advance_alpha(HistoryState& state, const ModeVector& h, const ModeVector& g, double dt) {
  const int K = state.K();
  for (int k = -K; k <= K; ++k) {
    rotate(state.alpha[k], state.alpha_prime[k], rotation(std::abs(k), dt));
    state.alpha[k] += h[k];
    state.alpha_prime[k] += g[k];
  }
  ++state.n;
}

std::vector<double> eval_history(const HistoryState& state, std::span<const double> targets, double eps) {
  std::vector<cplx> v = nufft2(targets, state.alpha, eps);
  std::vector<double> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i].real();
  return out;
}

TailMonitor::TailMonitor(int K, int K_big, std::vector<int> sampled_modes)
    : K_(K), K_big_(K_big), sampled_(std::move(sampled_modes)), modes_(sampled_.size()) {}

void TailMonitor::record(const ModeVector& alpha, double t) {
  double s = 0;
  for (int k = K_ + 1; k <= K_big_; ++k) s += std::abs(alpha[k]) + std::abs(alpha[-k]);
  t_.push_back(t);
  tail_.push_back(s);
  for (size_t i = 0; i < sampled_.size(); ++i) modes_[i].push_back(std::abs(alpha[sampled_[i]]));
}

namespace {
double l2_trapezoid(const std::vector<double>& t, const std::vector<double>& v) {
  double s = 0;
  for (size_t i = 1; i < t.size(); ++i) s += 0.5 * (t[i] - t[i - 1]) * (v[i] * v[i] + v[i - 1] * v[i - 1]);
  return std::sqrt(s);
}
}  // namespace

double TailMonitor::tail_l2() const { return l2_trapezoid(t_, tail_); }

std::vector<double> TailMonitor::mode_l2() const {
  std::vector<double> r;
  for (const auto& m : modes_) r.push_back(l2_trapezoid(t_, m));
  return r;
}

bool TailReport::holds() const {
  if (!(measured <= bound)) return false;
  for (size_t i = 0; i < modes.size(); ++i)
    if (!(mode_measured[i] <= mode_bound[i])) return false;
  return true;
}

TailReport truncation_tail(const TailMonitor& mon, int K, double K0, double C, int M, double T,
                           const Window& window) {
  const double b = window.b(), delta = window.delta();
  TailReport r;
  r.measured = mon.tail_l2();
  r.bound = 2 * std::numbers::pi * std::numbers::pi * T * M * C * b / (delta * std::sinh(b));
  r.hypothesis = K >= K0 + 2 * b / delta;
  r.modes = mon.sampled();
  r.mode_measured = mon.mode_l2();
  for (int k : r.modes) {
    double a = 0.5 * delta * (std::abs(k) - K0);
    double q = a * a - b * b;
    r.mode_bound.push_back(q > 0 ? b / std::sinh(b) * 3 * M * C * T / (std::abs(k) * std::sqrt(q)) : INFINITY);
  }
  return r;
}

TailReport measure_truncation_tail(std::span<const double> x,
                                   const std::function<void(double, std::vector<double>&)>& sigma,
                                   const WfpConfig& cfg_fine, int K, double K0, double C, double T,
                                   std::vector<int> sampled_modes) {
  Window window(cfg_fine.delta, cfg_fine.b, std::max(2 * cfg_fine.W, 32));
  StepKernels kern = precompute_kernels(window, cfg_fine);
  const int Kb = cfg_fine.K;
  HistoryState st(Kb, cfg_fine.W);
  NufftPlan plan(std::vector<double>(x.begin(), x.end()), Kb, cfg_fine.eps);
  TailMonitor mon(K, Kb, std::move(sampled_modes));
  ModeVector sk(Kb), h(Kb), g(Kb);
  std::vector<double> sig(x.size());
  const int N = static_cast<int>(std::ceil(T / cfg_fine.dt - 1e-9));
  const double scale = 1.0 / (2 * std::numbers::pi);
  mon.record(st.alpha, 0.0);
  for (int n = 0; n < N; ++n) {
    sigma(n * cfg_fine.dt, sig);
    plan.type1(std::span<const double>(sig), sk);
    for (auto& c : sk.c) c *= scale;
    step_hg(kern, st, sk, h, g);
    advance_alpha(kern, st, h, g);
    st.push_sk(sk);
    mon.record(st.alpha, (n + 1) * cfg_fine.dt);
  }
  return truncation_tail(mon, K, K0, C, static_cast<int>(x.size()), T, window);
}

}  // namespace wfp
