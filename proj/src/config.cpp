#include "wfp/config.hpp"

#include <cmath>
#include <numbers>

namespace wfp {

Boundary parse_boundary(const std::string& s) {
  if (s == "periodic") return Boundary::periodic;
  if (s == "free-space" || s == "free_space" || s == "free") return Boundary::free_space;
  throw ValidationError("unknown boundary mode: " + s);
}

std::string to_string(Boundary bc) {
  return bc == Boundary::periodic ? "periodic" : "free-space";
}

namespace {

void check_common(double eps, double dt, int p) {
  if (!(eps > 0 && eps < 1)) throw ValidationError("eps must lie in (0,1)");
  if (!(dt > 0)) throw ValidationError("dt must be positive");
  if (p < 2 || p > 16 || p % 2 != 0) throw ValidationError("p must be even in [2,16]");
}

WfpConfig finish(double eps, double gamma, int W, double dt, int p, Boundary bc) {
  WfpConfig c;
  c.dt = dt;
  c.eps = eps;
  c.gamma = gamma;
  c.b = std::log(1.0 / eps);
  c.W = W;
  c.delta = W * dt;
  if (c.delta >= std::numbers::pi)
    throw ValidationError("window timescale W*dt must be below pi");
  c.K = static_cast<int>(std::ceil(std::numbers::pi / dt - 1e-9));
  c.nF = 2 * c.K + 1;
  c.p = p;
  c.mMax = W + p / 2;
  c.nL = W;
  c.nG = 16;
  c.dtProj = std::max(1, static_cast<int>(std::floor(1.5 * W)));
  c.bc = bc;
  return c;
}

}  // namespace

WfpConfig derive_params(double eps, double gamma, double dt, int p, Boundary bc) {
  check_common(eps, dt, p);
  if (!(gamma > 0 && gamma < 1)) throw ValidationError("gamma must lie in (0,1)");
  int W = static_cast<int>(std::lround(2.0 / (std::numbers::pi * gamma) * std::log(1.0 / eps)));
  W = std::max(W, 1);
  return finish(eps, gamma, W, dt, p, bc);
}

WfpConfig config_with_window(double eps, int W, double dt, int p, Boundary bc) {
  check_common(eps, dt, p);
  if (W < 1) throw ValidationError("W must be at least 1");
  double gamma = 2.0 / (std::numbers::pi * W) * std::log(1.0 / eps);
  return finish(eps, gamma, W, dt, p, bc);
}

double suggest_dt(double K0, double gamma) {
  double K = std::ceil(K0 / (1.0 - gamma));
  return std::numbers::pi / K;
}

double gaussian_bandlimit(double mu, double eps) {
  return 2.0 * std::sqrt(mu * std::log(1.0 / eps));
}

GeometryReport validate_geometry(const std::vector<double>& positions, const WfpConfig& cfg) {
  GeometryReport r;
  if (cfg.bc == Boundary::periodic) return r;
  double lim = std::numbers::pi - 3 * cfg.delta;
  for (int j = 0; j < static_cast<int>(positions.size()); ++j) {
    if (std::abs(positions[j]) > lim) {
      r.ok = false;
      r.offending.push_back(j);
    }
  }
  return r;
}

}  // namespace wfp
