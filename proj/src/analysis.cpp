#include "wfp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wfp/config.hpp"
#include "wfp/fft.hpp"
#include "wfp/window.hpp"

namespace wfp {

double max_grid_error(const SpaceTimeField& a, const SpaceTimeField& b) {
  if (a.x != b.x || a.t != b.t || a.u.size() != b.u.size())
    throw ValidationError("max_grid_error: grids differ");
  double e = 0;
  for (size_t i = 0; i < a.u.size(); ++i) e = std::max(e, std::abs(a.u[i] - b.u[i]));
  return e;
}

double estimate_order(const std::vector<double>& errors, const std::vector<double>& dts, double floor) {
  if (errors.size() != dts.size()) throw ValidationError("estimate_order: length mismatch");
  std::vector<double> lx, ly;
  for (size_t i = 0; i < errors.size(); ++i) {
    if (!(errors[i] > 10 * floor) || !(dts[i] > 0)) continue;
    lx.push_back(std::log(dts[i]));
    ly.push_back(std::log(errors[i]));
  }
  if (lx.size() < 3) throw ValidationError("estimate_order: fewer than 3 points above the floor");
  const double n = static_cast<double>(lx.size());
  double mx = 0, my = 0;
  for (size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxy / sxx;
}

std::vector<double> spectral_taper(int n, double taper_fraction, double b) {
  std::vector<double> w(n, 1.0);
  if (n < 2 || taper_fraction <= 0) return w;
  const double len = taper_fraction * (n - 1);
  Window win(len, b, 64);
  for (int i = 0; i < n; ++i) {
    double s = std::min<double>(i, n - 1 - i);
    if (s < len) w[i] = win.phi(s);
  }
  return w;
}

Spectrum windowed_spectrum(const std::vector<double>& signal, double dt, double taper_fraction, int pad_factor) {
  const int N = static_cast<int>(signal.size());
  Spectrum sp;
  if (N == 0) return sp;
  if (pad_factor < 1) throw ValidationError("windowed_spectrum: pad_factor must be >= 1");
  std::vector<double> w = spectral_taper(N, taper_fraction);
  const int n = N * pad_factor;
  Fft fft(n, +1);
  auto* buf = fft.data();
  for (int i = 0; i < n; ++i) buf[i] = i < N ? w[i] * signal[i] : 0.0;
  fft.execute();
  const int half = n / 2;
  sp.omega.resize(half + 1);
  sp.mag.resize(half + 1);
  for (int m = 0; m <= half; ++m) {
    sp.omega[m] = 2 * std::numbers::pi * m / (n * dt);
    sp.mag[m] = dt * std::abs(buf[m]);
  }
  return sp;
}

double spectrum_energy(const Spectrum& s, double lo, double hi) {
  if (s.omega.size() < 2) return 0;
  const double dw = s.omega[1] - s.omega[0];
  double e = 0;
  for (size_t i = 0; i < s.omega.size(); ++i)
    if (s.omega[i] >= lo && s.omega[i] <= hi) e += s.mag[i] * s.mag[i] * dw;
  return e;
}

std::vector<double> spectrum_peaks(const Spectrum& s, int count, double min_separation) {
  std::vector<size_t> idx;
  for (size_t i = 1; i + 1 < s.mag.size(); ++i)
    if (s.mag[i] > s.mag[i - 1] && s.mag[i] >= s.mag[i + 1]) idx.push_back(i);
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return s.mag[a] > s.mag[b]; });
  std::vector<double> out;
  for (size_t i : idx) {
    if (static_cast<int>(out.size()) >= count) break;
    double w = s.omega[i];
    double a = s.mag[i - 1], b = s.mag[i], c = s.mag[i + 1];
    if (a > 0 && b > 0 && c > 0) {
      double la = std::log(a), lb = std::log(b), lc = std::log(c);
      double den = la - 2 * lb + lc;
      if (den < 0) w += 0.5 * (la - lc) / den * (s.omega[i + 1] - s.omega[i]);
    }
    bool close = false;
    for (double v : out) close = close || std::abs(v - w) < min_separation;
    if (!close) out.push_back(w);
  }
  return out;
}

double klein_gordon_cutoff(double mean_beta, double mean_spacing) {
  if (!(mean_beta > 0) || !(mean_spacing > 0)) throw ValidationError("klein_gordon_cutoff: inputs must be positive");
  return std::sqrt(mean_beta / mean_spacing);
}

}  // namespace wfp
