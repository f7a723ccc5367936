#include "wfp/stability.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "wfp/config.hpp"
#include "wfp/potential.hpp"

namespace wfp {

SchemeParams scheme_params(double beta, double L, double dt) {
  if (!(beta > 0) || !(dt > 0) || !(L >= 0)) throw ValidationError("scheme_params: need beta, dt > 0 and L >= 0");
  SchemeParams sp;
  sp.alpha = beta * dt / 2;
  sp.kappa = L / dt;
  sp.s = static_cast<int>(std::floor(sp.kappa));
  sp.alpha_tilde = (sp.s + 1 - sp.kappa) * sp.alpha;
  const double a = sp.alpha, k = sp.kappa;
  if (k < 1) {
    sp.xi1 = a * (2 - k * k) / 2;
    sp.xi2 = a * (1 - k) * (1 - k) / 2;
  } else {
    double r = 1 - k + sp.s;
    sp.xi1 = a / 2 * (r * (1 + k - sp.s) + 1);
    sp.xi2 = a / 2 * r * r;
  }
  return sp;
}

std::vector<double> march_m1(int p, double alpha, const std::vector<double>& g) {
  if (p != 1 && p != 2) throw ValidationError("march_m1: p must be 1 or 2");
  const size_t N = g.empty() ? 0 : g.size() - 1;
  std::vector<double> s(N + 1, 0.0);
  double P = 0;  // sum_{nu <= n} sigma^nu
  for (size_t n = 0; n < N; ++n) {
    P += s[n];
    if (p == 1)
      s[n + 1] = -g[n + 1] - alpha * P;
    else
      s[n + 1] = (-g[n + 1] - alpha * P) / (1 + alpha / 2);
  }
  return s;
}

DensityPair march_m2(int p, const SchemeParams& sp, const std::vector<double>& g1,
                     const std::vector<double>& g2) {
  if (p != 1 && p != 2) throw ValidationError("march_m2: p must be 1 or 2");
  if (g1.size() != g2.size()) throw ValidationError("march_m2: data lengths differ");
  if (sp.s != static_cast<int>(std::floor(sp.kappa)) || !(sp.alpha > 0))
    throw ValidationError("march_m2: inconsistent scheme parameters");
  if (p == 2) {
    SchemeParams ref = scheme_params(2 * sp.alpha, sp.kappa, 1.0);
    double tol = 1e-12 * sp.alpha;
    if (std::abs(ref.xi1 - sp.xi1) > tol || std::abs(ref.xi2 - sp.xi2) > tol)
      throw ValidationError("march_m2: weights do not match the kappa regime");
  }
  const long N = g1.empty() ? 0 : static_cast<long>(g1.size()) - 1;
  DensityPair r{std::vector<double>(N + 1, 0.0), std::vector<double>(N + 1, 0.0)};
  // prefix sums P[k] = sum_{nu <= k} sigma^nu, P(-1) = 0
  std::vector<double> P1(N + 1, 0.0), P2(N + 1, 0.0);
  auto pre = [](const std::vector<double>& P, long k) { return k < 0 ? 0.0 : P[k]; };
  auto at = [](const std::vector<double>& s, long k) { return k < 0 ? 0.0 : s[k]; };
  const double a = sp.alpha;
  const long s = sp.s;
  for (long n = 0; n < N; ++n) {
    double b1, b2;
    if (p == 1) {
      b1 = -g1[n + 1] - a * pre(P1, n) - sp.alpha_tilde * at(r.s2, n - s) - a * pre(P2, n - s - 1);
      b2 = -g2[n + 1] - a * pre(P2, n) - sp.alpha_tilde * at(r.s1, n - s) - a * pre(P1, n - s - 1);
      r.s1[n + 1] = b1;
      r.s2[n + 1] = b2;
    } else if (sp.kappa < 1) {
      const double d = 1 + a / 2;
      b1 = -g1[n + 1] - a * pre(P1, n) - a * pre(P2, n - 1) - sp.xi1 * r.s2[n];
      b2 = -g2[n + 1] - a * pre(P2, n) - a * pre(P1, n - 1) - sp.xi1 * r.s1[n];
      double det = d * d - sp.xi2 * sp.xi2;
      r.s1[n + 1] = (d * b1 - sp.xi2 * b2) / det;
      r.s2[n + 1] = (d * b2 - sp.xi2 * b1) / det;
    } else {
      const double d = 1 + a / 2;
      b1 = -g1[n + 1] - a * pre(P1, n) - a * pre(P2, n - s - 1) - sp.xi1 * at(r.s2, n - s) -
           sp.xi2 * at(r.s2, n - s + 1);
      b2 = -g2[n + 1] - a * pre(P2, n) - a * pre(P1, n - s - 1) - sp.xi1 * at(r.s1, n - s) -
           sp.xi2 * at(r.s1, n - s + 1);
      r.s1[n + 1] = b1 / d;
      r.s2[n + 1] = b2 / d;
    }
    P1[n + 1] = P1[n] + r.s1[n + 1];
    P2[n + 1] = P2[n] + r.s2[n + 1];
  }
  return r;
}

namespace {

using cd = std::complex<double>;

// Roots of the monic polynomial with coefficients c[0..d] (c[d] = 1).
std::vector<cd> poly_roots(const std::vector<double>& c) {
  const int d = static_cast<int>(c.size()) - 1;
  if (d < 1) return {};
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(d, d);
  for (int i = 1; i < d; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) C(i, d - 1) = -c[i];
  Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
  std::vector<cd> r(d);
  for (int i = 0; i < d; ++i) r[i] = es.eigenvalues()[i];
  return r;
}

cd horner(const std::vector<double>& c, cd z) {
  cd v = 0;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) v = v * z + c[i];
  return v;
}

// Zeros inside |z| = 1 by the argument principle.
int winding_count(const std::vector<double>& c) {
  const int d = static_cast<int>(c.size()) - 1;
  const int n = 4096 + 256 * d;
  double total = 0;
  cd prev = horner(c, 1.0);
  for (int i = 1; i <= n; ++i) {
    cd cur = horner(c, std::polar(1.0, 2 * std::numbers::pi * i / n));
    total += std::arg(cur / prev);
    prev = cur;
  }
  return static_cast<int>(std::lround(total / (2 * std::numbers::pi)));
}

}  // namespace

RootReport char_roots_m2_p1(double alpha, double kappa) {
  if (!(alpha > 0) || !(kappa >= 0)) throw ValidationError("char_roots_m2_p1: need alpha > 0, kappa >= 0");
  const int s = static_cast<int>(std::floor(kappa));
  const double at = (s + 1 - kappa) * alpha;
  const int d = s + 2;
  std::vector<double> base(d + 1, 0.0);
  base[d] = 1;
  base[d - 1] += alpha - 1;
  std::vector<double> plus = base, minus = base;
  plus[1] += at;
  plus[0] += alpha - at;
  minus[1] -= at;
  minus[0] -= alpha - at;

  RootReport rep;
  rep.plus = poly_roots(plus);
  rep.minus = poly_roots(minus);
  rep.plus_at_one = horner(plus, 1.0).real();
  rep.minus_at_one = horner(minus, 1.0).real();

  // p-(z) = (z - 1) q(z) by synthetic division
  std::vector<double> q(d, 0.0);
  double carry = 0;
  for (int i = d; i >= 1; --i) {
    carry = minus[i] + carry;
    q[i - 1] = carry;
  }
  std::vector<cd> qroots = poly_roots(q);
  for (cd z : rep.plus) rep.max_other = std::max(rep.max_other, std::abs(z));
  for (cd z : qroots) rep.max_other = std::max(rep.max_other, std::abs(z));
  rep.inside_plus = winding_count(plus);
  rep.inside_minus_reduced = winding_count(q);
  return rep;
}

BoundReport verify_stability_bound(double L, double beta, double dt, int trials, std::uint64_t seed,
                                   int steps) {
  if (!(L * beta < 2)) throw ValidationError("verify_stability_bound: need L < 2/beta");
  if (!(dt > L)) throw ValidationError("verify_stability_bound: need dt > L");
  SchemeParams sp = scheme_params(beta, L, dt);
  BoundReport rep;
  rep.C = 1.0 / (1.0 - L * beta / 2);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<double> g1(steps + 1), g2(steps + 1);
  for (int t = 0; t < trials; ++t) {
    g1[0] = g2[0] = 0;
    for (int n = 1; n <= steps; ++n) {
      g1[n] = nd(rng);
      g2[n] = nd(rng);
    }
    DensityPair r = march_m2(2, sp, g1, g2);
    double ns = 0, ng = 0;
    for (int n = 1; n <= steps; ++n) {
      ns += r.s1[n] * r.s1[n] + r.s2[n] * r.s2[n];
      ng += g1[n] * g1[n] + g2[n] * g2[n];
    }
    double ratio = ng > 0 ? std::sqrt(ns / ng) : 0.0;
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    if (!(ratio <= rep.C)) rep.holds = false;
  }
  return rep;
}

OrderReport measure_convergence_m2(double beta, double L, double T, const std::vector<double>& dts, int p) {
  SpringSet springs({-L / 2, L / 2}, {beta, beta});
  std::vector<GaussianDensity> dens{{10.0, 3.0}, {12.0, 3.5}};
  OrderReport rep;
  rep.dts = dts;
  for (double dt : dts) {
    if (p == 2 && !(dt < std::min(2 / beta, L)))
      throw ValidationError("measure_convergence_m2: need dt < min(2/beta, L)");
    SchemeParams sp = scheme_params(beta, L, dt);
    const int N = static_cast<int>(std::ceil(T / dt - 1e-9));
    std::vector<double> g1(N + 1, 0.0), g2(N + 1, 0.0);
    for (int n = 1; n <= N; ++n) {
      auto g = manufactured_data(springs, dens, n * dt);
      g1[n] = g[0];
      g2[n] = g[1];
    }
    DensityPair r = march_m2(p, sp, g1, g2);
    double e = 0;
    for (int n = 0; n <= N; ++n)
      e = std::max(e, std::abs(r.s1[n] - dens[0](n * dt)) + std::abs(r.s2[n] - dens[1](n * dt)));
    rep.errors.push_back(e);
  }
  // least-squares slope in log-log
  const size_t m = dts.size();
  if (m >= 2) {
    double mx = 0, my = 0;
    for (size_t i = 0; i < m; ++i) {
      mx += std::log(dts[i]);
      my += std::log(rep.errors[i]);
    }
    mx /= m;
    my /= m;
    double sxy = 0, sxx = 0;
    for (size_t i = 0; i < m; ++i) {
      double dx = std::log(dts[i]) - mx;
      sxy += dx * (std::log(rep.errors[i]) - my);
      sxx += dx * dx;
    }
    rep.order = sxy / sxx;
  }
  return rep;
}

bool impulse_decays(int p, double alpha, int steps) {
  std::vector<double> g(steps + 1, 0.0);
  g[1] = 1.0;
  std::vector<double> s = march_m1(p, alpha, g);
  return std::abs(s[steps]) < 1e-6 * std::abs(s[1]);
}

}  // namespace wfp
