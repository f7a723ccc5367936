#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "wfp/special.hpp"
#include "wfp/window.hpp"

using namespace wfp;
using cd = std::complex<double>;

namespace {

const double kB = std::log(1e12);

// phi' straight from its closed form, using the standard library Bessel function
double bump(double t, double delta, double b) {
  if (t < 0 || t > delta) return 0;
  double r = 2 * t / delta - 1;
  return b / (delta * std::sinh(b)) * std::cyl_bessel_i(0.0, b * std::sqrt(std::max(0.0, 1 - r * r)));
}

// composite 5-point Gauss-Legendre on [a, b]
template <class F>
auto integrate(F f, double a, double b, int panels = 400) {
  const double g[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831, 0.9061798459386640};
  const double w[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
                       0.2369268850561891};
  decltype(f(a)) s{};
  double h = (b - a) / panels;
  for (int i = 0; i < panels; ++i) {
    double c = a + (i + 0.5) * h;
    for (int q = 0; q < 5; ++q) s += w[q] * 0.5 * h * f(c + 0.5 * h * g[q]);
  }
  return s;
}

}  // namespace

TEST_CASE("Bessel functions against the standard library") {
  for (double x : {0.0, 0.1, 1.0, 5.0, 14.9, 15.1, 27.6, 49.0, 51.0, 80.0}) {
    CHECK(bessel_i0(x) == doctest::Approx(std::cyl_bessel_i(0.0, x)).epsilon(1e-14));
    CHECK(bessel_i1(x) == doctest::Approx(std::cyl_bessel_i(1.0, x)).epsilon(1e-14));
  }
  CHECK(bessel_i1_over_x(0) == 0.5);
  CHECK(sin_over_k(0, 0.3) == 0.3);
  CHECK(sin_over_k(1e-9, 0.3) == doctest::Approx(0.3));
}

TEST_CASE("phi endpoints, symmetry and normalization") {
  Window w(0.35, kB, 70);
  CHECK(w.phi(-1) == 0);
  CHECK(w.phi(0) == 0);
  CHECK(w.phi(0.35) == 1);
  CHECK(w.phi(1) == 1);
  CHECK(w.phi(0.175) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(w.normalization() == doctest::Approx(kB / (0.35 * std::sinh(kB))));
  CHECK(w.phi_prime(0.175) == doctest::Approx(kB / (0.35 * std::sinh(kB)) * std::cyl_bessel_i(0.0, kB)));
  CHECK(w.phi_prime(0) == doctest::Approx(kB / (0.35 * std::sinh(kB))));
  CHECK(std::abs(w.phi_dprime(0.175)) < 1e-10 * w.phi_prime(0.175) / 0.35);
  CHECK(w.phi_prime(-0.01) == 0);
  CHECK(w.phi_prime(0.36) == 0);
  double total = integrate([&](double t) { return bump(t, 0.35, kB); }, 0, 0.35);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("phi matches an independent quadrature of the bump") {
  const double d = 0.35;
  Window w(d, kB, 70);
  CHECK(w.phi(0.3 * d) == doctest::Approx(integrate([&](double t) { return bump(t, d, kB); }, 0, 0.3 * d)).epsilon(1e-14));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(0, d);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    double t = U(rng);
    double ref = integrate([&](double s) { return bump(s, d, kB); }, 0, t);
    worst = std::max(worst, std::abs(w.phi(t) - ref));
  }
  CHECK(worst <= 1e-13);
}

TEST_CASE("phi' is nonnegative and phi'' is its derivative") {
  Window w(0.2, kB, 70);
  for (int i = 0; i <= 200; ++i) CHECK(w.phi_prime(0.2 * i / 200) >= 0);
  for (double t : {0.03, 0.07, 0.11, 0.16}) {
    double h = 1e-6;
    double fd = (w.phi_prime(t + h) - w.phi_prime(t - h)) / (2 * h);
    CHECK(w.phi_dprime(t) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("Fourier transform of phi'") {
  for (double b : {5.0, 12.0, 27.6, 40.0}) {
    Window w(0.3, b, 70);
    CHECK(std::abs(w.hat_phi_prime(0) - 1.0) <= 1e-14);
  }
  const double d = 0.3;
  Window w(d, kB, 70);
  CHECK(std::abs(w.hat_phi_prime(2 * kB / d)) == doctest::Approx(kB / std::sinh(kB)));
  double w4 = 4 * kB / d;
  CHECK(std::abs(w.hat_phi_prime(w4)) <= 2 * kB / (std::sinh(kB) * std::sqrt(3.0) * kB));
  for (double om : {0.0, 7.0, 60.0, 2 * kB / d, 250.0, -90.0}) {
    cd ref = integrate([&](double t) { return bump(t, d, kB) * std::exp(cd(0, om * t)); }, 0, d, 2000);
    CHECK(std::abs(w.hat_phi_prime(om) - ref) <= 1e-12);
  }
  for (double om = 2 * kB / d; om < 2000; om += 37.3) CHECK(std::abs(w.hat_phi_prime(om)) <= 1.0);
}

TEST_CASE("influence kernel") {
  const double d = 0.3;
  Window w(d, kB, 70);
  CHECK(w.influence_kernel(0, d / 2) == doctest::Approx(2 * w.phi_prime(d / 2)));
  CHECK(w.influence_kernel(3, -0.1) == 0);
  double k = 5, tau = 0.4 * d, h = 1e-6;
  double fd = (bump(tau + h, d, kB) - bump(tau - h, d, kB)) / (2 * h);
  double ref = 2 * std::cos(k * tau) * bump(tau, d, kB) + std::sin(k * tau) / k * fd;
  CHECK(w.influence_kernel(k, tau) == doctest::Approx(ref).epsilon(1e-8));
  CHECK(w.influence_kernel(-k, tau) == doctest::Approx(w.influence_kernel(k, tau)));
}

TEST_CASE("Fourier transform of the influence kernel") {
  const double d = 0.3;
  Window w(d, kB, 70);
  // at omega = 0 the phi'' term integrates by parts to minus half the cosine term
  CHECK(std::abs(w.hat_influence_kernel(50, 0) - 0.5 * (w.hat_phi_prime(50) + w.hat_phi_prime(-50))) < 1e-14);
  cd ref = integrate([&](double t) { return w.influence_kernel(50, t) * std::exp(cd(0, 10 * t)); }, 0, d, 2000);
  CHECK(std::abs(w.hat_influence_kernel(50, 10) - ref) <= 1e-10);
  CHECK_THROWS(w.hat_influence_kernel(0, 1.0));
  for (double k : {400.0, 600.0, 1000.0})
    for (double om : {0.0, 50.0, -120.0}) {
      if (std::abs(k) - std::abs(om) <= 2 * kB / d) continue;
      double x = d * (std::abs(k) - std::abs(om)) / 2;
      double bound = 3 * kB / (std::sinh(kB) * std::sqrt(x * x - kB * kB));
      CHECK(std::abs(w.hat_influence_kernel(k, om)) <= bound);
      CHECK(w.hat_influence_bound(k, om) == doctest::Approx(bound));
    }
}

TEST_CASE("tabulated phi agrees with direct phi") {
  Window w(0.35, kB, 70);
  PhiTable tab(w);
  double worst = 0;
  for (int i = -10; i <= 1010; ++i) {
    double t = 0.35 * i / 1000;
    worst = std::max(worst, std::abs(tab(t) - w.phi(t)));
  }
  CHECK(worst <= 1e-14);
}
