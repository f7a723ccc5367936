#include "wfp/field.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "wfp/config.hpp"

namespace wfp {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = a;
    return v;
  }
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

void write_field_csv(const SpaceTimeField& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  out << std::setprecision(17);
  out << "t\\x";
  for (double xi : f.x) out << ',' << xi;
  out << '\n';
  for (size_t n = 0; n < f.t.size(); ++n) {
    out << f.t[n];
    for (size_t i = 0; i < f.x.size(); ++i) out << ',' << f.at(n, i);
    out << '\n';
  }
}

SpaceTimeField read_field_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read " + path);
  SpaceTimeField f;
  std::string line;
  std::getline(in, line);
  {
    std::stringstream ss(line);
    std::string cell;
    std::getline(ss, cell, ',');
    while (std::getline(ss, cell, ',')) f.x.push_back(std::stod(cell));
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::getline(ss, cell, ',');
    f.t.push_back(std::stod(cell));
    while (std::getline(ss, cell, ',')) f.u.push_back(std::stod(cell));
  }
  if (f.u.size() != f.x.size() * f.t.size()) throw ValidationError("ragged field file " + path);
  return f;
}

namespace {

void put_le(std::ostream& out, double v) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

double get_le(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

}  // namespace

void write_field_binary(const SpaceTimeField& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  for (double v : f.u) put_le(out, v);
  nlohmann::json meta;
  meta["format"] = "f64-le";
  meta["layout"] = "time-major";
  meta["nx"] = f.x.size();
  meta["nt"] = f.t.size();
  meta["x"] = f.x;
  meta["t"] = f.t;
  std::ofstream side(path + ".json");
  side << meta.dump(2) << '\n';
}

SpaceTimeField read_field_binary(const std::string& path) {
  std::ifstream side(path + ".json");
  if (!side) throw ValidationError("missing sidecar for " + path);
  nlohmann::json meta = nlohmann::json::parse(side);
  SpaceTimeField f(meta["x"].get<std::vector<double>>(), meta["t"].get<std::vector<double>>());
  std::ifstream in(path, std::ios::binary);
  for (auto& v : f.u) v = get_le(in);
  if (!in) throw ValidationError("truncated field file " + path);
  return f;
}

}  // namespace wfp
