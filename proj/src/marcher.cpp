#include "wfp/marcher.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <istream>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>

#include "wfp/fft.hpp"

namespace wfp {

namespace {
constexpr double kPi = std::numbers::pi;
}

void rbc_project(HistoryState& state, const Window& window, const WfpConfig& cfg) {
  if (cfg.bc != Boundary::free_space) throw std::logic_error("rbc_project: periodic mode");
  const int K = state.K(), n = 2 * K, W = cfg.W;
  if (n < 4 * W) throw ValidationError("rbc_project: roll-off regions overlap");
  const double h = 2 * kPi / n, delta = cfg.delta;
  Fft inv(n, -1), fwd(n, +1);

  auto to_grid = [&](const ModeVector& a, std::vector<cplx>& out) {
    cplx* b = inv.data();
    std::fill(b, b + n, cplx(0.0));
    for (int k = -K + 1; k <= K - 1; ++k) b[(k + n) % n] = a[k];
    inv.execute();
    out.assign(b, b + n);
  };
  std::vector<cplx> u, v;
  to_grid(state.alpha, u);
  to_grid(state.alpha_prime, v);

  for (int i = K - 2 * W; i <= K - 1; ++i) {
    double x = i * h;
    double ps = window.phi(kPi - delta - x), dps = window.phi_prime(kPi - delta - x);
    cplx ui = u[i];
    u[i] = ps * ui;
    v[i] = dps * ui + ps * v[i];
  }
  for (int i = K; i <= K + 2 * W - 1; ++i) {
    double x = i * h - 2 * kPi;
    double ps = window.phi(x + kPi - delta), dps = window.phi_prime(x + kPi - delta);
    cplx ui = u[i];
    u[i] = ps * ui;
    v[i] = dps * ui + ps * v[i];
  }

  auto to_modes = [&](const std::vector<cplx>& g, ModeVector& a) {
    cplx* b = fwd.data();
    std::copy(g.begin(), g.end(), b);
    fwd.execute();
    a.zero();
    for (int k = -K + 1; k <= K - 1; ++k) a[k] = b[(k + n) % n] / static_cast<double>(n);
  };
  to_modes(u, state.alpha);
  to_modes(v, state.alpha_prime);
}

FourierHistory::FourierHistory(std::vector<double> x, const Window& window, const WfpConfig& cfg)
    : cfg_(cfg),
      window_(&window),
      kern_(precompute_kernels(window, cfg)),
      state_(cfg.K, cfg.W),
      plan_(std::move(x), cfg.K, cfg.eps),
      sk_(cfg.K),
      h_(cfg.K),
      g_(cfg.K) {}

void FourierHistory::advance(std::span<const double> sigma) {
  plan_.type1(sigma, sk_);
  const double scale = 1.0 / (2 * kPi);
  for (auto& c : sk_.c) c *= scale;
  step_hg(kern_, state_, sk_, h_, g_);
  advance_alpha(kern_, state_, h_, g_);
  state_.push_sk(sk_);
  if (cfg_.bc == Boundary::free_space && state_.n % cfg_.dtProj == 0) rbc_project(state_, *window_, cfg_);
}

void FourierHistory::eval_springs(std::span<double> out) { plan_.type2_real(state_.alpha, out); }

void FourierHistory::eval(std::span<const double> x, std::span<double> out) {
  std::vector<cplx> v = nufft2(x, state_.alpha, cfg_.eps);
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i].real();
}

void FourierHistory::snapshot(std::ostream& out) const { state_.snapshot(out); }

void FourierHistory::restore(std::istream& in) { state_ = HistoryState::restore(in); }

size_t FourierHistory::footprint() const { return 2 * state_.footprint(); }

Probe::Probe(std::vector<double> x, std::vector<double> springs_sorted, const LocalWeightBuilder& builder)
    : x_(std::move(x)), local_(x_, springs_sorted, builder) {}

Marcher::Marcher(const SpringSet& springs, const WfpConfig& cfg, std::unique_ptr<HistoryEngine> engine)
    : cfg_(cfg) {
  const int M = springs.size();
  if (cfg.bc == Boundary::free_space) {
    GeometryReport rep = validate_geometry(springs.x, cfg);
    if (!rep.ok)
      throw ValidationError("spring " + std::to_string(rep.offending.front()) +
                            " lies outside [-pi + 3 delta, pi - 3 delta]");
  } else {
    for (double xi : springs.x)
      if (xi < -kPi || xi > kPi) throw ValidationError("periodic positions must lie in [-pi, pi]");
  }
  perm_.resize(M);
  std::iota(perm_.begin(), perm_.end(), 0);
  std::stable_sort(perm_.begin(), perm_.end(), [&](int a, int b) { return springs.x[a] < springs.x[b]; });
  x_.resize(M);
  beta_.resize(M);
  for (int s = 0; s < M; ++s) {
    x_[s] = springs.x[perm_[s]];
    beta_[s] = springs.beta[perm_[s]];
  }
  window_ = std::make_unique<Window>(cfg.delta, cfg.b, std::max(2 * cfg.W, 32));
  builder_ = std::make_unique<LocalWeightBuilder>(cfg, *window_);
  local_ = std::make_unique<LocalOperators>(x_, beta_, *builder_);
  engine_ = engine ? std::move(engine) : std::make_unique<FourierHistory>(x_, *window_, cfg);
  dens_ = DensityHistory(M, cfg.mMax + 1);
  sigma_.assign(M, 0.0);
  rhs_.assign(M, 0.0);
  uh_.assign(M, 0.0);
}

void Marcher::step(std::span<const double> g) {
  const int M = springs();
  if (static_cast<int>(g.size()) != M) throw std::invalid_argument("step: data size differs from M");
  engine_->advance(sigma_);
  engine_->eval_springs(uh_);
  local_->apply_explicit(dens_, rhs_.data());
  for (int s = 0; s < M; ++s) rhs_[s] = -(g[perm_[s]] + rhs_[s] + beta_[s] * uh_[s]);
  local_->solve(rhs_.data());
  for (int s = 0; s < M; ++s)
    if (!std::isfinite(rhs_[s]))
      throw NumericalError("non-finite density at step " + std::to_string(n_ + 1) + ", spring " +
                           std::to_string(perm_[s]));
  dens_.push(rhs_.data());
  sigma_ = rhs_;
  ++n_;
}

std::vector<double> Marcher::density() const {
  std::vector<double> out(sigma_.size());
  for (size_t s = 0; s < sigma_.size(); ++s) out[perm_[s]] = sigma_[s];
  return out;
}

Probe Marcher::make_probe(std::vector<double> x) const { return Probe(std::move(x), x_, *builder_); }

void Marcher::sample(const Probe& probe, std::span<double> out) {
  std::vector<double> loc(probe.x_.size());
  probe.local_.apply(dens_, loc.data());
  engine_->eval(probe.x_, out);
  for (size_t i = 0; i < loc.size(); ++i) out[i] += loc[i];
}

void Marcher::snapshot(std::ostream& out) const {
  long hdr[2] = {n_, static_cast<long>(sigma_.size())};
  out.write(reinterpret_cast<const char*>(hdr), sizeof hdr);
  out.write(reinterpret_cast<const char*>(sigma_.data()), static_cast<std::streamsize>(sigma_.size() * sizeof(double)));
  dens_.snapshot(out);
  engine_->snapshot(out);
}

void Marcher::restore(std::istream& in) {
  long hdr[2];
  in.read(reinterpret_cast<char*>(hdr), sizeof hdr);
  if (!in || hdr[1] != static_cast<long>(sigma_.size())) throw ValidationError("snapshot does not match this marcher");
  n_ = hdr[0];
  in.read(reinterpret_cast<char*>(sigma_.data()), static_cast<std::streamsize>(sigma_.size() * sizeof(double)));
  dens_.restore(in);
  engine_->restore(in);
}

size_t Marcher::state_footprint() const {
  return dens_.footprint() + sigma_.size() + engine_->footprint();
}

double domain_scale(double A, double delta) {
  if (A <= kPi - 3 * delta) return 1.0;
  return kPi / (A + 3 * delta);
}

int window_width(double eps, double gamma) {
  if (!(gamma > 0 && gamma < 1)) throw ValidationError("gamma must lie in (0,1)");
  if (!(eps > 0 && eps < 1)) throw ValidationError("eps must lie in (0,1)");
  return std::max(1, static_cast<int>(std::lround(2.0 / (kPi * gamma) * std::log(1.0 / eps))));
}

SimulationResult simulate(const SimulationSetup& su) {
  if (!su.incident && !su.data) throw ValidationError("simulate: no incident pulse or data source");
  if (!(su.T > 0)) throw ValidationError("simulate: T must be positive");
  const double delta = window_width(su.eps, su.gamma) * su.dt;
  double c = 1.0;
  if (su.bc == Boundary::free_space) {
    double A = 0;
    for (double v : su.springs.x) A = std::max(A, std::abs(v));
    for (double v : su.target_x) A = std::max(A, std::abs(v));
    for (double v : su.probes) A = std::max(A, std::abs(v));
    c = domain_scale(A, delta);
  }
  SimulationResult res;
  res.scale = c;
  res.cfg = derive_params(su.eps, su.gamma, c * su.dt, su.p, su.bc);
  const int M = su.springs.size();
  if (M == 0) {
    const int N = static_cast<int>(std::ceil(su.T / su.dt - 1e-9));
    std::vector<double> snapped;
    for (double t : su.output_t) snapped.push_back(std::clamp<long>(std::lround(t / su.dt), 0, N) * su.dt);
    res.field = SpaceTimeField(su.target_x, snapped);
    res.probe_u.assign(su.probes.size(), {});
    for (size_t k = 0; k < snapped.size(); ++k)
      for (size_t i = 0; i < su.target_x.size(); ++i)
        res.field.at(k, i) = su.total_field && su.incident ? (*su.incident)(su.target_x[i], snapped[k]) : 0.0;
    for (int n = 0; n <= N; ++n) {
      if (su.probes.empty()) break;
      res.probe_t.push_back(n * su.dt);
      for (size_t i = 0; i < su.probes.size(); ++i)
        res.probe_u[i].push_back(su.total_field && su.incident ? (*su.incident)(su.probes[i], n * su.dt) : 0.0);
    }
    return res;
  }

  std::vector<double> xs(M), bs(M);
  for (int j = 0; j < M; ++j) {
    xs[j] = c * su.springs.x[j];
    bs[j] = su.springs.beta[j] / c;
  }
  SpringSet scaled;
  scaled.x = xs;
  scaled.beta = bs;
  Marcher mar(scaled, res.cfg);
  res.ntyp = M > 0 ? mar.ntyp() : 0.0;

  auto scale_x = [&](const std::vector<double>& v) {
    std::vector<double> r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
  };
  Probe grid = mar.make_probe(scale_x(su.target_x));
  Probe probes = mar.make_probe(scale_x(su.probes));

  const int N = static_cast<int>(std::ceil(su.T / su.dt - 1e-9));
  std::vector<std::vector<int>> out_at(N + 1);
  std::vector<double> snapped;
  for (size_t i = 0; i < su.output_t.size(); ++i) {
    long n = std::lround(su.output_t[i] / su.dt);
    n = std::clamp<long>(n, 0, N);
    out_at[n].push_back(static_cast<int>(i));
    snapped.push_back(n * su.dt);
  }
  res.field = SpaceTimeField(su.target_x, snapped);
  res.probe_u.assign(su.probes.size(), {});
  if (su.record_density) {
    res.density.dt = su.dt;
    res.density.sigma.assign(1, std::vector<double>(M, 0.0));
  }

  std::vector<double> g(M), buf;
  auto emit = [&](int n) {
    double t = n * su.dt;
    if (!out_at[n].empty()) {
      buf.assign(su.target_x.size(), 0.0);
      if (n > 0) mar.sample(grid, buf);
      for (int idx : out_at[n])
        for (size_t i = 0; i < buf.size(); ++i)
          res.field.at(idx, i) = buf[i] + (su.total_field && su.incident ? (*su.incident)(su.target_x[i], t) : 0.0);
    }
    if (!su.probes.empty()) {
      buf.assign(su.probes.size(), 0.0);
      if (n > 0) mar.sample(probes, buf);
      res.probe_t.push_back(t);
      for (size_t i = 0; i < buf.size(); ++i)
        res.probe_u[i].push_back(buf[i] + (su.total_field && su.incident ? (*su.incident)(su.probes[i], t) : 0.0));
    }
  };

  emit(0);
  for (int n = 0; n < N; ++n) {
    double tp = (n + 1) * su.dt;  // physical time
    if (su.incident) {
      for (int j = 0; j < M; ++j) g[j] = bs[j] * su.incident->f(su.springs.x[j] - tp);
    } else {
      std::vector<double> gp = su.data(tp);
      for (int j = 0; j < M; ++j) g[j] = gp[j] / c;
    }
    auto t0 = std::chrono::steady_clock::now();
    mar.step(g);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    res.step_ms.push_back(ms);
    std::vector<double> sig;
    if (su.record_density || su.diagnostics) sig = mar.density();
    if (su.record_density) {
      for (double& v : sig) v *= c;
      res.density.sigma.push_back(sig);
    }
    if (su.diagnostics) {
      double mx = 0;
      for (double v : sig) mx = std::max(mx, std::abs(v));
      *su.diagnostics << "{\"step\":" << n + 1 << ",\"wall_ms\":" << ms << ",\"max_sigma\":" << mx << "}\n";
    }
    emit(n + 1);
  }
  return res;
}

double mean_neighbors(const std::vector<double>& x, double delta) {
  if (x.empty()) return 0.0;
  std::vector<double> s = x;
  std::sort(s.begin(), s.end());
  size_t lo = 0, hi = 0;
  double total = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    while (s[i] - s[lo] >= delta) ++lo;
    while (hi < s.size() && s[hi] - s[i] < delta) ++hi;
    total += static_cast<double>(hi - lo);
  }
  return total / static_cast<double>(s.size());
}

double dt_for_ntyp(const std::vector<double>& x, double ntyp, double eps, double gamma) {
  if (x.empty()) throw ValidationError("dt_for_ntyp: no positions");
  double lo = 0, hi = 0;
  for (double v : x) hi = std::max(hi, std::abs(v));
  hi = 2 * hi + 1;
  for (int it = 0; it < 100; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mean_neighbors(x, mid) < ntyp)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi) / window_width(eps, gamma);
}

}  // namespace wfp
