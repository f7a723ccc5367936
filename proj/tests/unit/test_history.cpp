#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "wfp/config.hpp"
#include "wfp/history.hpp"
#include "wfp/nufft.hpp"
#include "wfp/special.hpp"
#include "wfp/window.hpp"

using namespace wfp;
constexpr double kPi = std::numbers::pi;

namespace {

template <class F>
double integrate(F f, double a, double b, int panels) {
  const double g[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831, 0.9061798459386640};
  const double w[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
                       0.2369268850561891};
  double s = 0, h = (b - a) / panels;
  for (int i = 0; i < panels; ++i) {
    double c = a + (i + 0.5) * h;
    for (int q = 0; q < 5; ++q) s += w[q] * 0.5 * h * f(c + 0.5 * h * g[q]);
  }
  return s;
}

std::vector<double> rand_points(int M, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-kPi, kPi);
  std::vector<double> x(M);
  for (auto& v : x) v = U(rng);
  return x;
}

}  // namespace

TEST_CASE("density Fourier coefficients") {
  ModeVector z = compute_sk(std::vector<double>{0.1, 0.2}, std::vector<double>{0, 0}, 10, 1e-12);
  for (auto v : z.c) CHECK(v == cplx(0));
  ModeVector one = compute_sk(std::vector<double>{0.0}, std::vector<double>{2 * kPi}, 10, 1e-12);
  for (auto v : one.c) CHECK(std::abs(v - 1.0) < 1e-14);

  auto x = rand_points(700, 1);
  std::vector<double> s(700);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> N;
  for (auto& v : s) v = N(rng);
  ModeVector fast = compute_sk(x, s, 400, 1e-12);
  std::vector<cplx> sc(s.begin(), s.end());
  ModeVector dir = nudft1_direct(x, sc, 400);
  double num = 0, den = 0;
  for (int i = 0; i < fast.size(); ++i) {
    num += std::norm(fast.c[i] - dir.c[i] / (2 * kPi));
    den += std::norm(dir.c[i] / (2 * kPi));
  }
  CHECK(std::sqrt(num / den) <= 1e-11);
  // real densities give conjugate-symmetric modes
  for (int k = 1; k <= 400; ++k) CHECK(std::abs(fast[k] - std::conj(fast[-k])) <= 1e-12 * std::sqrt(den));
}

TEST_CASE("step kernels") {
  WfpConfig cfg = derive_params(1e-12, 0.5, 0.01, 6, Boundary::periodic);
  Window w(cfg.delta, cfg.b, 2 * cfg.W);
  StepKernels kern = precompute_kernels(w, cfg);
  CHECK(kern.p.size() == static_cast<size_t>(cfg.W) * (cfg.K + 1));
  for (int k : {0, 7, 100}) CHECK(kern.pk(k, 3) == kern.pk(-k, 3));

  // k = 0 against an independent quadrature
  for (int m : {0, 5, 17, 34}) {
    double ref = integrate([&](double mu) { return (cfg.dt - mu) * w.influence_kernel(0, m * cfg.dt + mu); }, 0,
                           cfg.dt, 200);
    CHECK(std::abs(kern.pk(0, m) - ref) <= 1e-12);
  }
  for (int k : {3, 60, 250})
    for (int m : {0, 10, 30}) {
      double rp = integrate(
          [&](double mu) { return std::sin(k * (cfg.dt - mu)) / k * w.influence_kernel(k, m * cfg.dt + mu); }, 0,
          cfg.dt, 200);
      double rq = integrate([&](double mu) { return std::cos(k * (cfg.dt - mu)) * w.influence_kernel(k, m * cfg.dt + mu); },
                            0, cfg.dt, 200);
      CHECK(std::abs(kern.pk(k, m) - rp) <= 1e-12);
      CHECK(std::abs(kern.qk(k, m) - rq) <= 1e-12 * std::max(1.0, std::abs(rq)));
    }

  WfpConfig fine = cfg;
  fine.nG = 32;
  StepKernels k32 = precompute_kernels(w, fine);
  double worst = 0, peak = 0;
  for (size_t i = 0; i < kern.p.size(); ++i) {
    worst = std::max({worst, std::abs(kern.p[i] - k32.p[i]), std::abs(kern.q[i] - k32.q[i]) * cfg.dt});
    peak = std::max(peak, std::abs(kern.q[i]));
  }
  CHECK(worst <= 1e-13 * std::max(1.0, peak));
}

TEST_CASE("history state layout") {
  HistoryState st(20, 7);
  CHECK(st.depth() == 7);
  CHECK(st.n == 0);
  for (auto v : st.alpha.c) CHECK(v == cplx(0));
  for (int m = 0; m < 7; ++m)
    for (auto v : st.stack(m).c) CHECK(v == cplx(0));
  for (int i = 1; i <= 9; ++i) {
    ModeVector s(20);
    s[0] = double(i);
    st.push_sk(s);
  }
  for (int m = 0; m < 7; ++m) CHECK(st.stack(m)[0] == cplx(9.0 - m));
}

TEST_CASE("history terms vanish for zero coefficients") {
  WfpConfig cfg = derive_params(1e-12, 0.5, 0.02, 4, Boundary::periodic);
  Window w(cfg.delta, cfg.b, 2 * cfg.W);
  StepKernels kern = precompute_kernels(w, cfg);
  HistoryState st(cfg.K, cfg.W);
  ModeVector sk(cfg.K), h(cfg.K), g(cfg.K);
  step_hg(kern, st, sk, h, g);
  for (int i = 0; i < h.size(); ++i) {
    CHECK(h.c[i] == cplx(0));
    CHECK(g.c[i] == cplx(0));
  }
  HistoryState wrong(cfg.K, cfg.W + 1);
  CHECK_THROWS(step_hg(kern, wrong, sk, h, g));
  for (double v : eval_history(st, std::vector<double>{-1, 0, 2}, 1e-12)) CHECK(v == 0);
}

TEST_CASE("homogeneous propagation") {
  const int K = 30;
  HistoryState st(K, 3);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> N;
  for (int k = -K; k <= K; ++k) {
    st.alpha[k] = {N(rng), N(rng)};
    st.alpha_prime[k] = {N(rng), N(rng)};
  }
  cplx a0 = st.alpha[0], ap0 = st.alpha_prime[0];
  std::vector<double> e0(K + 1);
  for (int k = 1; k <= K; ++k) e0[k] = std::norm(st.alpha[k]) + std::norm(st.alpha_prime[k]) / (k * k);
  ModeVector zero(K);
  const double dt = 0.017;
  for (int n = 0; n < 1000; ++n) advance_alpha(st, zero, zero, dt);
  for (int k = 1; k <= K; ++k)
    CHECK(std::abs(std::norm(st.alpha[k]) + std::norm(st.alpha_prime[k]) / (k * k) - e0[k]) <= 1e-13 * e0[k]);
  CHECK(std::abs(st.alpha[0] - (a0 + 1000 * dt * ap0)) <= 1e-12 * std::abs(a0 + 1000 * dt * ap0));
  CHECK(st.alpha_prime[0] == ap0);
  CHECK(st.n == 1000);
}

TEST_CASE("driven modes match the windowed Duhamel integral") {
  WfpConfig cfg = derive_params(1e-12, 0.5, 0.01, 6, Boundary::periodic);
  Window w(cfg.delta, cfg.b, 2 * cfg.W);
  StepKernels kern = precompute_kernels(w, cfg);
  HistoryState st(cfg.K, cfg.W);
  auto S = [](double t) { return std::exp(-50 * (t - 1) * (t - 1)); };
  ModeVector sk(cfg.K), h(cfg.K), g(cfg.K);
  const int N = 150;
  for (int n = 0; n < N; ++n) {
    for (auto& c : sk.c) c = S(n * cfg.dt);
    step_hg(kern, st, sk, h, g);
    advance_alpha(kern, st, h, g);
    st.push_sk(sk);
  }
  const double T = N * cfg.dt;
  for (int k : {0, 5, 60}) {
    auto forcing = [&](double s) {
      double lo = std::max(0.0, s - cfg.delta);
      if (s <= lo) return 0.0;
      return integrate([&](double tau) { return w.influence_kernel(k, s - tau) * S(tau); }, lo, s, 40);
    };
    double ref = integrate([&](double s) { return sin_over_k(k, T - s) * forcing(s); }, 0, T, 150);
    CHECK(std::abs(st.alpha[k] - ref) <= 1e-10);
    CHECK(std::abs(st.alpha[k].imag()) == 0);
  }
}

TEST_CASE("history evaluation matches direct summation") {
  HistoryState st(300, 2);
  std::mt19937_64 rng(6);
  std::normal_distribution<double> N;
  for (int k = 0; k <= 300; ++k) {
    st.alpha[k] = {N(rng), N(rng)};
    st.alpha[-k] = std::conj(st.alpha[k]);
  }
  st.alpha[0] = st.alpha[0].real();
  auto x = rand_points(200, 7);
  auto fast = eval_history(st, x, 1e-12);
  auto dir = nudft2_direct(x, st.alpha);
  double num = 0, den = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    num += (fast[i] - dir[i].real()) * (fast[i] - dir[i].real());
    den += dir[i].real() * dir[i].real();
  }
  CHECK(std::sqrt(num / den) <= 1e-11);
}

TEST_CASE("snapshot round trip") {
  HistoryState st(12, 4);
  for (int i = 0; i < 6; ++i) {
    ModeVector s(12);
    for (int k = -12; k <= 12; ++k) s[k] = cplx(i + k, -k);
    st.push_sk(s);
    st.alpha[3] = cplx(i, 1);
    st.alpha_prime[-2] = cplx(2, i);
    ++st.n;
  }
  std::stringstream buf;
  st.snapshot(buf);
  HistoryState back = HistoryState::restore(buf);
  CHECK(back.n == st.n);
  CHECK(back.alpha.c == st.alpha.c);
  CHECK(back.alpha_prime.c == st.alpha_prime.c);
  for (int m = 0; m < 4; ++m) CHECK(back.stack(m).c == st.stack(m).c);
}

TEST_CASE("truncation tail of zero densities") {
  WfpConfig fine = config_with_window(1e-12, 36, kPi / 80, 6, Boundary::periodic);
  std::vector<double> x{-1.0, 0.5};
  auto zero = [](double, std::vector<double>& out) { std::fill(out.begin(), out.end(), 0.0); };
  TailReport r = measure_truncation_tail(x, zero, fine, 40, 5.0, 1.0, 2.0, {41, 60});
  CHECK(r.measured == 0);
  CHECK(r.bound > 0);
  CHECK(r.holds());
}
