#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "json.hpp"
#include "wfp/experiments.hpp"

namespace wfp::cli {

using nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

struct CommandArgs {
  std::string command;  ///< converge | simulate | timing | stability | spectra
  std::string config;
  std::uint64_t seed = 1;
  std::string out = ".";
  bool full = false;
};

/// Settings of the spectra command (reads a finished simulate run).
struct SpectraOptions {
  int probe = 0;
  int pad_factor = 32;
  double taper_fraction = 0.1;
  double cavity_length = 1;  ///< for the out-of-band energy
  double band_half_width = 0.1 * 3.141592653589793;
  int peaks = 3;
};

/// Loads a config file and applies its "full" overrides when requested.
json load_config(const std::string& path, bool full);

ConvergeOptions converge_from_json(const json& j);
json to_json(const ConvergeOptions& o);
SimulateOptions simulate_from_json(const json& j);
json to_json(const SimulateOptions& o);
TimingOptions timing_from_json(const json& j);
json to_json(const TimingOptions& o);
StabilityOptions stability_from_json(const json& j);
json to_json(const StabilityOptions& o);
SpectraOptions spectra_from_json(const json& j);
json to_json(const SpectraOptions& o);

/// Runs one command, writing outputs under args.out. Returns the exit code.
int run_command(const CommandArgs& args, std::ostream& log);

}  // namespace wfp::cli
