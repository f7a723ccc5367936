#include "wfp/potential.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <iostream>
#include <numbers>

namespace wfp {

double greens_free(double x, double t) { return t >= std::abs(x) ? 0.5 : 0.0; }

double slp_gaussian_exact(const SpringSet& springs, const std::vector<GaussianDensity>& dens,
                          double x, double t) {
  double u = 0;
  for (int j = 0; j < springs.size(); ++j) {
    double T = t - std::abs(x - springs.x[j]);
    if (T <= 0) continue;
    double s = std::sqrt(dens[j].mu);
    u += 0.25 * std::sqrt(std::numbers::pi / dens[j].mu) *
         (std::erf(s * (T - dens[j].t0)) - std::erf(-s * dens[j].t0));
  }
  return u;
}

double slp_gaussian_exact_periodic(const SpringSet& springs, const std::vector<GaussianDensity>& dens,
                                   double x, double t) {
  const double P = 2 * std::numbers::pi;
  int reach = static_cast<int>(std::ceil(t / P)) + 1;
  double u = 0;
  for (int m = -reach; m <= reach; ++m) u += slp_gaussian_exact(springs, dens, x + m * P, t);
  return u;
}

std::vector<double> manufactured_data(const SpringSet& springs,
                                      const std::vector<GaussianDensity>& dens, double t, Boundary bc) {
  std::vector<double> g(springs.size());
  for (int j = 0; j < springs.size(); ++j) {
    double u = bc == Boundary::periodic ? slp_gaussian_exact_periodic(springs, dens, springs.x[j], t)
                                        : slp_gaussian_exact(springs, dens, springs.x[j], t);
    g[j] = -dens[j](t) - springs.beta[j] * u;
  }
  return g;
}

InterpIntegrator::InterpIntegrator(int p)
    : p_(p), lo_offset_(1 - (p + 1) / 2), rule_(gauss_legendre(p / 2 + 1, 0.0, 1.0)) {
  if (p < 1 || p > 16) throw std::invalid_argument("InterpIntegrator: p must lie in [1,16]");
  // weights of an unclamped full piece, identical for every i
  full_.assign(p, 0.0);
  if (p == 1) {
    full_[0] = 1.0;
    return;
  }
  double v[32];
  for (int g = 0; g < rule_.n; ++g) {
    lagrange_stencil(-lo_offset_ + rule_.nodes[g], 0, p - 1, p, v);
    for (int r = 0; r < p; ++r) full_[r] += rule_.weights[g] * v[r];
  }
}

int InterpIntegrator::piece_weights(int i, double a, double b, int avail, double* w) const {
  int lo = i + lo_offset_;
  if (lo + p_ - 1 > avail) lo = avail - p_ + 1;
  double len = b - a;
  if (p_ == 1) {
    w[0] = len;
    return lo;
  }
  if (a == 0.0 && b == 1.0 && lo == i + lo_offset_) {
    std::copy(full_.begin(), full_.end(), w);
    return lo;
  }
  for (int r = 0; r < p_; ++r) w[r] = 0.0;
  double v[32];
  for (int g = 0; g < rule_.n; ++g) {
    double x = (i - lo) + a + len * rule_.nodes[g];
    lagrange_stencil(x, 0, p_ - 1, p_, v);
    for (int r = 0; r < p_; ++r) w[r] += len * rule_.weights[g] * v[r];
  }
  return lo;
}

double InterpIntegrator::integral(const std::function<double(int)>& sigma, double dt, double T,
                                  int avail) const {
  if (T <= 0) return 0.0;
  double u = T / dt;
  int istar = static_cast<int>(std::floor(u));
  double frac = u - istar;
  double w[32];
  double sum = 0;
  auto add = [&](int i, double a, double b) {
    int lo = piece_weights(i, a, b, avail, w);
    for (int r = 0; r < p_; ++r) {
      int idx = lo + r;
      if (idx >= 0) sum += w[r] * sigma(idx);
    }
  };
  for (int i = 0; i < istar; ++i) add(i, 0.0, 1.0);
  if (frac > 1e-14) add(istar, 0.0, frac);
  return sum * dt;
}

namespace {

struct Link {
  int j, l;
  double d;
};

DensitySeries march(const SpringSet& springs, const DataFn& g, int p, double dt, double T,
                    int image_count) {
  const int M = springs.size();
  const int N = static_cast<int>(std::ceil(T / dt - 1e-9));
  const double two_pi = 2 * std::numbers::pi;
  InterpIntegrator integ(p);
  const int lo_off = 1 - (p + 1) / 2;
  const int top_off = lo_off + p - 1;

  std::vector<Link> links;
  for (int j = 0; j < M; ++j)
    for (int l = 0; l < M; ++l)
      for (int m = -image_count; m <= image_count; ++m) {
        double d = std::abs(springs.x[j] - springs.x[l] - two_pi * m);
        if (d < T + dt) links.push_back({j, l, d});
      }

  DensitySeries out;
  out.dt = dt;
  out.sigma.assign(N + 1, std::vector<double>(M, 0.0));
  // prefix[l][i] = integral over the first i pieces (unclamped stencils)
  std::vector<std::vector<double>> prefix(M, std::vector<double>(1, 0.0));
  double w[32];

  Eigen::MatrixXd A(M, M);
  Eigen::VectorXd rhs(M);
  for (int n = 0; n < N; ++n) {
    // finalize pieces whose stencil lies within known data (indices <= n)
    for (int l = 0; l < M; ++l) {
      auto& P = prefix[l];
      while (static_cast<int>(P.size()) - 1 + top_off <= n) {
        int i = static_cast<int>(P.size()) - 1;
        int lo = integ.piece_weights(i, 0.0, 1.0, n, w);
        double s = 0;
        for (int r = 0; r < p; ++r)
          if (lo + r >= 0) s += w[r] * out.sigma[lo + r][l];
        P.push_back(P.back() + s * dt);
      }
    }
    const double tn1 = (n + 1) * dt;
    std::vector<double> gn = g(tn1);
    A.setIdentity();
    for (int j = 0; j < M; ++j) rhs[j] = -gn[j];
    for (const Link& lk : links) {
      double Tup = tn1 - lk.d;
      if (Tup <= 0) continue;
      int avail = lk.d < dt ? n + 1 : n;
      double u = Tup / dt;
      int istar = static_cast<int>(std::floor(u));
      double frac = u - istar;
      const auto& P = prefix[lk.l];
      int F = std::min(istar, static_cast<int>(P.size()) - 1);
      double expl = P[F];
      double coef = 0;
      auto add = [&](int i, double a, double b) {
        int lo = integ.piece_weights(i, a, b, avail, w);
        for (int r = 0; r < p; ++r) {
          int idx = lo + r;
          if (idx < 0) continue;
          if (idx == n + 1)
            coef += w[r] * dt;
          else
            expl += w[r] * dt * out.sigma[idx][lk.l];
        }
      };
      for (int i = F; i < istar; ++i) add(i, 0.0, 1.0);
      if (frac > 1e-14) add(istar, 0.0, frac);
      double half_beta = 0.5 * springs.beta[lk.j];
      rhs[lk.j] -= half_beta * expl;
      A(lk.j, lk.l) += half_beta * coef;
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    if (std::abs(lu.determinant()) < 1e-300) throw NumericalError("reference march: singular system");
    Eigen::VectorXd s = lu.solve(rhs);
    for (int j = 0; j < M; ++j) {
      if (!std::isfinite(s[j])) throw NumericalError("reference march: non-finite density");
      out.sigma[n + 1][j] = s[j];
    }
  }
  return out;
}

}  // namespace

DensitySeries reference_march_free(const SpringSet& springs, const DataFn& g, int p, double dt, double T) {
  return march(springs, g, p, dt, T, 0);
}

DensitySeries reference_march_periodic(const SpringSet& springs, const DataFn& g, int p, double dt,
                                       double T, int image_count) {
  int need = static_cast<int>(std::ceil(T / (2 * std::numbers::pi))) + 1;
  if (image_count < need)
    std::clog << "reference_march_periodic: image_count " << image_count << " below " << need
              << " for T=" << T << '\n';
  return march(springs, g, p, dt, T, image_count);
}

SpaceTimeField eval_scattered_field(const DensitySeries& dens, const SpringSet& springs, int p,
                                    const std::vector<double>& x, const std::vector<double>& t,
                                    Boundary bc) {
  SpaceTimeField f(x, t);
  InterpIntegrator integ(p);
  const int N = dens.steps();
  const double two_pi = 2 * std::numbers::pi;
  for (size_t n = 0; n < t.size(); ++n) {
    int images = bc == Boundary::periodic ? static_cast<int>(std::ceil(t[n] / two_pi)) + 1 : 0;
    for (size_t i = 0; i < x.size(); ++i) {
      double u = 0;
      for (int l = 0; l < springs.size(); ++l) {
        auto sig = [&](int idx) { return idx <= N ? dens.sigma[idx][l] : 0.0; };
        for (int m = -images; m <= images; ++m) {
          double d = std::abs(x[i] - springs.x[l] - two_pi * m);
          if (t[n] - d > 0) u += 0.5 * integ.integral(sig, dens.dt, t[n] - d, N);
        }
      }
      f.at(n, i) = u;
    }
  }
  return f;
}

}  // namespace wfp
