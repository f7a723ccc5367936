#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "wfp/fft.hpp"
#include "wfp/nufft.hpp"

using namespace wfp;
constexpr double kPi = std::numbers::pi;

namespace {

std::vector<double> rand_points(int M, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-kPi, kPi);
  std::vector<double> x(M);
  for (auto& v : x) v = U(rng);
  return x;
}

std::vector<cplx> rand_cplx(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N;
  std::vector<cplx> c(n);
  for (auto& v : c) v = {N(rng), N(rng)};
  return c;
}

double l2(const std::vector<cplx>& v) {
  double s = 0;
  for (auto z : v) s += std::norm(z);
  return std::sqrt(s);
}

double l2diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("direct type 1 sums") {
  std::vector<double> x{0.0};
  std::vector<cplx> c{1.0};
  ModeVector s = nudft1_direct(x, c, 5);
  CHECK(s.size() == 11);
  for (int k = -5; k <= 5; ++k) CHECK(std::abs(s[k] - 1.0) < 1e-15);
  ModeVector e = nudft1_direct(std::vector<double>{}, std::vector<cplx>{}, 3);
  for (auto v : e.c) CHECK(v == cplx(0));
  ModeVector two = nudft1_direct(std::vector<double>{-kPi / 2, kPi / 2}, std::vector<cplx>{1, 1}, 1);
  CHECK(std::abs(two[1]) < 1e-15);
}

TEST_CASE("direct type 2 sums") {
  ModeVector m(0);
  m[0] = 1;
  auto u = nudft2_direct(rand_points(7, 1), m);
  for (auto v : u) CHECK(std::abs(v - 1.0) < 1e-15);
  ModeVector c1(1);
  c1[-1] = 0.5;
  c1[1] = 0.5;
  CHECK(std::abs(nudft2_direct(std::vector<double>{0.0}, c1)[0] - 1.0) < 1e-15);
  // sign convention e^{-ikx}
  ModeVector one(2);
  one[1] = 1;
  CHECK(std::abs(nudft2_direct(std::vector<double>{0.3}, one)[0] - std::exp(cplx(0, -0.3))) < 1e-15);
}

TEST_CASE("small problems take the direct path bit for bit") {
  auto x = rand_points(40, 2);
  auto c = rand_cplx(40, 3);
  ModeVector a = nufft1(x, c, 50, 1e-12), b = nudft1_direct(x, c, 50);
  CHECK(a.c == b.c);
  auto u = nufft2(x, b, 1e-12), v = nudft2_direct(x, b);
  CHECK(u == v);
}

TEST_CASE("fast transforms meet the requested tolerance") {
  auto x = rand_points(500, 4);
  auto c = rand_cplx(500, 5);
  ModeVector fast = nufft1(x, c, 1000, 1e-12), dir = nudft1_direct(x, c, 1000);
  CHECK(l2diff(fast.c, dir.c) <= 1e-11 * l2(dir.c));
  ModeVector modes(1000);
  modes.c = rand_cplx(2001, 6);
  auto u = nufft2(x, modes, 1e-12), v = nudft2_direct(x, modes);
  CHECK(l2diff(u, v) <= 1e-11 * l2(v));

  for (int M : {10, 1000})
    for (int K : {10, 1000})
      for (double eps : {1e-6, 1e-10, 1e-14}) {
        auto xx = rand_points(M, 10 + M + K);
        auto cc = rand_cplx(M, 20 + M + K);
        ModeVector f = nufft1(xx, cc, K, eps), d = nudft1_direct(xx, cc, K);
        CHECK(l2diff(f.c, d.c) <= 10 * std::max(eps, 1e-15) * l2(d.c) + 1e-13 * l2(d.c));
      }
}

TEST_CASE("uniform points reduce to a plain FFT") {
  const int K = 64, n = 2 * K;
  std::vector<double> x(n);
  for (int j = 0; j < n; ++j) x[j] = -kPi + 2 * kPi * j / n;
  auto c = rand_cplx(n, 7);
  ModeVector s = nufft1(x, c, K - 1, 1e-12);
  Fft fft(n, +1);
  for (int j = 0; j < n; ++j) fft.data()[j] = c[j];
  fft.execute();
  double worst = 0, scale = 0;
  for (int k = -(K - 1); k <= K - 1; ++k) {
    // e^{ik(-pi + 2 pi j/n)} = (-1)^k e^{2 pi i jk/n}
    cplx ref = fft.data()[(k + n) % n] * (k % 2 ? -1.0 : 1.0);
    worst = std::max(worst, std::abs(s[k] - ref));
    scale = std::max(scale, std::abs(ref));
  }
  CHECK(worst <= 1e-12 * scale);

  ModeVector modes(K - 1);
  modes.c = rand_cplx(modes.size(), 8);
  auto u = nufft2(x, modes, 1e-12);
  Fft inv(n, -1);
  for (int i = 0; i < n; ++i) inv.data()[i] = 0;
  for (int k = -(K - 1); k <= K - 1; ++k) inv.data()[(k + n) % n] = modes[k] * (k % 2 ? -1.0 : 1.0);
  inv.execute();
  worst = 0;
  for (int j = 0; j < n; ++j) worst = std::max(worst, std::abs(u[j] - inv.data()[j]));
  CHECK(worst <= 1e-12 * l2(modes.c));
}

TEST_CASE("adjointness of the fast transforms") {
  for (int trial = 0; trial < 100; ++trial) {
    int M = 100 + 7 * trial, K = 60 + 3 * trial;
    auto x = rand_points(M, 100 + trial);
    auto c = rand_cplx(M, 200 + trial);
    ModeVector a(K);
    a.c = rand_cplx(a.size(), 300 + trial);
    ModeVector s = nufft1(x, c, K, 1e-12);
    auto u = nufft2(x, a, 1e-12);
    cplx lhs = 0, rhs = 0;
    for (int i = 0; i < a.size(); ++i) lhs += s.c[i] * std::conj(a.c[i]);
    for (int j = 0; j < M; ++j) rhs += c[j] * std::conj(u[j]);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * l2(c) * l2(a.c));
  }
}

TEST_CASE("linearity") {
  auto x = rand_points(300, 30);
  auto c = rand_cplx(300, 31), d = rand_cplx(300, 32);
  cplx a(0.7, -1.3);
  std::vector<cplx> mix(300);
  for (int j = 0; j < 300; ++j) mix[j] = a * c[j] + d[j];
  ModeVector sm = nufft1(x, mix, 200, 1e-12), sc = nufft1(x, c, 200, 1e-12), sd = nufft1(x, d, 200, 1e-12);
  double worst = 0;
  for (int i = 0; i < sm.size(); ++i) worst = std::max(worst, std::abs(sm.c[i] - (a * sc.c[i] + sd.c[i])));
  CHECK(worst <= 1e-12 * l2(sm.c));
}

TEST_CASE("plans reproduce the one-shot transforms") {
  auto x = rand_points(800, 40);
  auto c = rand_cplx(800, 41);
  NufftPlan plan(x, 300, 1e-12);
  CHECK_FALSE(plan.direct());
  ModeVector out(300);
  plan.type1(c, out);
  ModeVector ref = nufft1(x, c, 300, 1e-12);
  CHECK(l2diff(out.c, ref.c) <= 1e-13 * l2(ref.c));
  std::vector<cplx> u(800);
  plan.type2(ref, u);
  auto v = nudft2_direct(x, ref);
  CHECK(l2diff(u, v) <= 1e-11 * l2(v));
  std::vector<double> ur(800);
  plan.type2_real(ref, ur);
  for (int j = 0; j < 800; ++j) CHECK(ur[j] == doctest::Approx(u[j].real()));
  CHECK(next_smooth(97) == 100);
  CHECK(next_smooth(128) == 128);
}
