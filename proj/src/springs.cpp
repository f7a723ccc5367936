#include "wfp/springs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "wfp/config.hpp"

namespace wfp {

SpringSet::SpringSet(std::vector<double> x_, std::vector<double> beta_, bool allow_zero_strength)
    : x(std::move(x_)), beta(std::move(beta_)) {
  if (x.size() != beta.size()) throw ValidationError("positions and strengths differ in length");
  for (double b : beta) {
    if (!std::isfinite(b) || b < 0 || (b == 0 && !allow_zero_strength))
      throw ValidationError("spring strengths must be positive");
  }
  for (double v : x)
    if (!std::isfinite(v)) throw ValidationError("spring positions must be finite");
  if (x.size() > 1 && !(min_separation() > 0)) throw ValidationError("coincident spring positions");
}

double SpringSet::min_separation() const {
  if (x.size() < 2) return std::numeric_limits<double>::infinity();
  std::vector<double> s = x;
  std::sort(s.begin(), s.end());
  double m = std::numeric_limits<double>::infinity();
  for (size_t i = 1; i < s.size(); ++i) m = std::min(m, s[i] - s[i - 1]);
  return m;
}

double GaussianDensity::operator()(double t) const {
  double d = t - t0;
  return std::exp(-mu * d * d);
}

double IncidentPulse::f(double s) const {
  double d = s - t0;
  return std::exp(-mu * d * d);
}

std::vector<double> random_positions(int M, double lo, double hi, double min_sep, std::uint64_t seed) {
  if (M > 1 && (M - 1) * min_sep >= 0.5 * (hi - lo))
    throw ValidationError("interval too short for requested minimum separation");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(lo, hi);
  std::set<double> pts;
  while (static_cast<int>(pts.size()) < M) {
    double v = U(rng);
    auto it = pts.lower_bound(v);
    if (it != pts.end() && *it - v < min_sep) continue;
    if (it != pts.begin() && v - *std::prev(it) < min_sep) continue;
    pts.insert(v);
  }
  return {pts.begin(), pts.end()};
}

std::vector<double> random_uniform(int M, double lo, double hi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(lo, hi);
  std::vector<double> v(M);
  for (auto& e : v) e = U(rng);
  return v;
}

}  // namespace wfp
