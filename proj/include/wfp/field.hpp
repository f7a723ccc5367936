#pragma once

#include <string>
#include <vector>

namespace wfp {

/// Samples u(x_i, t_n), stored row-major by time.
struct SpaceTimeField {
  std::vector<double> x;
  std::vector<double> t;
  std::vector<double> u;

  SpaceTimeField() = default;
  SpaceTimeField(std::vector<double> x_, std::vector<double> t_)
      : x(std::move(x_)), t(std::move(t_)), u(x.size() * t.size(), 0.0) {}

  double& at(size_t n, size_t i) { return u[n * x.size() + i]; }
  double at(size_t n, size_t i) const { return u[n * x.size() + i]; }
};

/// Header row holds the x grid; each following row is t then u values.
void write_field_csv(const SpaceTimeField& f, const std::string& path);
SpaceTimeField read_field_csv(const std::string& path);

/// Raw little-endian f64 values (time-major) plus path + ".json" describing
/// the grid.
void write_field_binary(const SpaceTimeField& f, const std::string& path);
SpaceTimeField read_field_binary(const std::string& path);

std::vector<double> linspace(double a, double b, int n);

}  // namespace wfp
