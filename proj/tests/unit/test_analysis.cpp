#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "wfp/analysis.hpp"
#include "wfp/config.hpp"
#include "wfp/experiments.hpp"

using namespace wfp;
constexpr double kPi = std::numbers::pi;

TEST_CASE("grid errors") {
  SpaceTimeField a({0, 1, 2}, {0.5, 1.0});
  for (size_t i = 0; i < a.u.size(); ++i) a.u[i] = std::sin(double(i));
  SpaceTimeField b = a;
  CHECK(max_grid_error(a, b) == 0);
  for (auto& v : b.u) v += 1e-8;
  CHECK(max_grid_error(a, b) == doctest::Approx(1e-8).epsilon(1e-6));
  SpaceTimeField c({0, 1}, {0.5, 1.0});
  CHECK_THROWS_AS(max_grid_error(a, c), ValidationError);
}

TEST_CASE("order estimation") {
  std::vector<double> dts{0.1, 0.05, 0.025, 0.0125};
  std::vector<double> e3, e7;
  for (double d : dts) {
    e3.push_back(2.5 * d * d * d);
    e7.push_back(1e3 * std::pow(d, 7));
  }
  CHECK(std::abs(estimate_order(e3, dts) - 3.0) <= 1e-10);
  CHECK(std::abs(estimate_order(e7, dts, 1e-20) - 7.0) <= 1e-10);
  CHECK_THROWS_AS(estimate_order({1e-12, 1e-12, 1e-12}, {0.1, 0.05, 0.025}), ValidationError);
  CHECK_THROWS_AS(estimate_order({1e-3, 1e-4}, {0.1, 0.05}), ValidationError);
  // points at the floor are dropped
  std::vector<double> ef = e3;
  ef.push_back(5e-12);
  std::vector<double> df = dts;
  df.push_back(0.001);
  CHECK(std::abs(estimate_order(ef, df) - 3.0) <= 1e-10);
  CHECK(loglog_slope({1, 2, 4}, {3, 12, 48}) == doctest::Approx(2.0));
}

TEST_CASE("spectrum of a sinusoid on a bin") {
  const int N = 4096;
  const double dt = 0.01;
  const int bin = 200;
  const double w0 = 2 * kPi * bin / (N * dt);
  std::vector<double> s(N);
  for (int n = 0; n < N; ++n) s[n] = std::sin(w0 * n * dt);
  Spectrum sp = windowed_spectrum(s, dt);
  CHECK(sp.omega.size() == N / 2 + 1);
  for (size_t i = 1; i < sp.omega.size(); ++i) CHECK(sp.omega[i] > sp.omega[i - 1]);
  size_t arg = 0;
  for (size_t i = 0; i < sp.mag.size(); ++i) {
    CHECK(sp.mag[i] >= 0);
    if (sp.mag[i] > sp.mag[arg]) arg = i;
  }
  CHECK(arg == bin);
  for (size_t i = 0; i < sp.mag.size(); ++i)
    if (std::abs(int(i) - bin) > 120) CHECK(sp.mag[i] <= 1e-6 * sp.mag[arg]);

  // direct DFT of the tapered signal
  auto w = spectral_taper(N);
  for (int m : {0, 37, bin, 1500}) {
    std::complex<double> acc = 0;
    for (int n = 0; n < N; ++n) acc += w[n] * s[n] * std::exp(std::complex<double>(0, 2 * kPi * m * n / N));
    CHECK(std::abs(sp.mag[m] - dt * std::abs(acc)) <= 1e-10 * dt * std::abs(acc) + 1e-12);
  }
  // Parseval against the tapered signal
  double e_time = 0, e_freq = 0;
  for (int n = 0; n < N; ++n) e_time += w[n] * w[n] * s[n] * s[n] * dt;
  for (size_t m = 0; m < sp.mag.size(); ++m) {
    double wgt = (m == 0 || m == sp.mag.size() - 1) ? 1.0 : 2.0;
    e_freq += wgt * sp.mag[m] * sp.mag[m] / (N * dt);
  }
  CHECK(e_freq == doctest::Approx(e_time).epsilon(1e-10));
}

TEST_CASE("spectrum edge cases") {
  Spectrum z = windowed_spectrum(std::vector<double>(128, 0.0), 0.1);
  for (double v : z.mag) CHECK(v == 0);
  CHECK(windowed_spectrum({}, 0.1).mag.empty());
  CHECK_THROWS(windowed_spectrum(std::vector<double>(8, 1.0), 0.1, 0.1, 0));
  auto w = spectral_taper(101);
  CHECK(w[0] == 0);
  CHECK(w[50] == 1);
  CHECK(w[5] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("spectrum of the incident Gaussian pulse") {
  const double mu = 5, dt = 0.01;
  const int N = 4000;
  std::vector<double> s(N);
  for (int n = 0; n < N; ++n) s[n] = std::exp(-mu * (n * dt - 20) * (n * dt - 20));
  Spectrum sp = windowed_spectrum(s, dt, 0.1, 4);
  size_t arg = 0;
  for (size_t i = 0; i < sp.mag.size(); ++i)
    if (sp.mag[i] > sp.mag[arg]) arg = i;
  CHECK(arg == 0);
  const double peak = std::sqrt(kPi / mu);
  for (size_t i = 0; i < sp.mag.size(); i += 37)
    if (sp.omega[i] < 15) CHECK(sp.mag[i] == doctest::Approx(peak * std::exp(-sp.omega[i] * sp.omega[i] / 20)).epsilon(1e-8).scale(1e-12));
}

TEST_CASE("peak picking and band energies") {
  Spectrum s;
  for (int i = 0; i <= 2000; ++i) {
    double w = 0.01 * i;
    s.omega.push_back(w);
    s.mag.push_back(std::exp(-50 * (w - kPi) * (w - kPi)) + 0.5 * std::exp(-50 * (w - 2 * kPi) * (w - 2 * kPi)) +
                    0.25 * std::exp(-50 * (w - 3 * kPi) * (w - 3 * kPi)));
  }
  auto pk = spectrum_peaks(s, 3, 0.5);
  REQUIRE(pk.size() == 3);
  CHECK(pk[0] == doctest::Approx(kPi).epsilon(1e-6));
  CHECK(pk[1] == doctest::Approx(2 * kPi).epsilon(1e-6));
  CHECK(pk[2] == doctest::Approx(3 * kPi).epsilon(1e-6));
  double all = spectrum_energy(s, 0, 100);
  CHECK(all == doctest::Approx((1 + 0.25 + 0.0625) * std::sqrt(kPi / 100)).epsilon(1e-6));
  CHECK(out_of_band_energy(s, 1.0, 0.5) <= 1e-6 * all);
}

TEST_CASE("Klein-Gordon cutoff") {
  CHECK(klein_gordon_cutoff(1.55, 4.0 / 150) == doctest::Approx(7.6).epsilon(0.01));
  CHECK(klein_gordon_cutoff(5.05, 4.0 / 150) == doctest::Approx(13.8).epsilon(0.005));
  CHECK(klein_gordon_cutoff(1, 1) == 1);
  CHECK_THROWS(klein_gordon_cutoff(0, 1));
}
