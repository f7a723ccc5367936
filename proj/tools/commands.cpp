#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "wfp/field.hpp"

namespace wfp::cli {

namespace fs = std::filesystem;

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + ": expected a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw ValidationError(where + ": unknown key '" + it.key() + "'");
}

template <class T>
T get(const json& j, const char* key, const T& def) {
  if (!j.contains(key)) return def;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad value for '") + key + "': " + e.what());
  }
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p);
  if (!f) throw ValidationError("cannot write " + p.string());
  f << std::setprecision(17);
  return f;
}

void write_json(const fs::path& p, const json& j) {
  auto f = open_out(p);
  f << j.dump(2) << "\n";
}

const std::set<std::string> kCommon{"command", "full"};

std::set<std::string> with_common(std::set<std::string> s) {
  s.insert(kCommon.begin(), kCommon.end());
  return s;
}

}  // namespace

json load_config(const std::string& path, bool full) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot open config " + path);
  json j;
  try {
    j = json::parse(f);
  } catch (const json::parse_error& e) {
    throw ValidationError("config " + path + ": " + e.what());
  }
  if (!j.is_object()) throw ValidationError("config " + path + ": expected a JSON object");
  if (full && j.contains("full")) {
    const json& over = j["full"];
    if (!over.is_object()) throw ValidationError("config: 'full' must be an object");
    for (auto it = over.begin(); it != over.end(); ++it) j[it.key()] = it.value();
  }
  j.erase("full");
  j.erase("command");
  return j;
}

ConvergeOptions converge_from_json(const json& j) {
  check_keys(j,
             with_common({"M", "p", "dts", "T", "eps", "gamma", "grid", "x_range", "min_sep", "mu_range",
                          "t0_range", "beta_range"}),
             "converge");
  ConvergeOptions o;
  o.M = get(j, "M", o.M);
  o.ps = get(j, "p", o.ps);
  o.T = get(j, "T", o.T);
  o.eps = get(j, "eps", o.eps);
  o.gamma = get(j, "gamma", o.gamma);
  o.grid = get(j, "grid", o.grid);
  auto xr = get(j, "x_range", std::vector<double>{o.x_lo, o.x_hi});
  auto mr = get(j, "mu_range", std::vector<double>{o.mu_lo, o.mu_hi});
  auto tr = get(j, "t0_range", std::vector<double>{o.t0_lo, o.t0_hi});
  auto br = get(j, "beta_range", std::vector<double>{o.beta_lo, o.beta_hi});
  for (auto* r : {&xr, &mr, &tr, &br})
    if (r->size() != 2 || !((*r)[0] <= (*r)[1])) throw ValidationError("converge: ranges must be [lo, hi]");
  o.x_lo = xr[0];
  o.x_hi = xr[1];
  o.mu_lo = mr[0];
  o.mu_hi = mr[1];
  o.t0_lo = tr[0];
  o.t0_hi = tr[1];
  o.beta_lo = br[0];
  o.beta_hi = br[1];
  o.min_sep = get(j, "min_sep", o.min_sep);
  if (o.M < 1) throw ValidationError("converge: M must be positive");
  if (o.grid < 1) throw ValidationError("converge: grid must be positive");
  for (int p : o.ps) {
    auto it = j.find("dts");
    if (it == j.end() || !it->contains(std::to_string(p)))
      throw ValidationError("converge: no dt sweep for p = " + std::to_string(p));
    o.dts[p] = get((*it), std::to_string(p).c_str(), std::vector<double>{});
    for (double dt : o.dts[p])
      if (!(dt > 0)) throw ValidationError("converge: dt must be positive");
  }
  return o;
}

json to_json(const ConvergeOptions& o) {
  json d = json::object();
  for (const auto& [p, v] : o.dts) d[std::to_string(p)] = v;
  return {{"command", "converge"},
          {"M", o.M},
          {"p", o.ps},
          {"dts", d},
          {"T", o.T},
          {"eps", o.eps},
          {"gamma", o.gamma},
          {"grid", o.grid},
          {"x_range", {o.x_lo, o.x_hi}},
          {"min_sep", o.min_sep},
          {"mu_range", {o.mu_lo, o.mu_hi}},
          {"t0_range", {o.t0_lo, o.t0_hi}},
          {"beta_range", {o.beta_lo, o.beta_hi}}};
}

SimulateOptions simulate_from_json(const json& j) {
  check_keys(j,
             with_common({"springs", "mu", "t0", "T", "eps", "gamma", "dt", "ntyp", "p", "bc", "x_range", "nx",
                          "nt", "total_field", "probes", "self_convergence"}),
             "simulate");
  SimulateOptions o;
  if (j.contains("springs")) {
    const json& s = j["springs"];
    check_keys(s, {"kind", "M", "range", "min_sep", "beta_range", "beta", "x"}, "simulate.springs");
    o.springs.kind = get(s, "kind", o.springs.kind);
    o.springs.M = get(s, "M", o.springs.M);
    auto r = get(s, "range", std::vector<double>{o.springs.lo, o.springs.hi});
    auto br = get(s, "beta_range", std::vector<double>{o.springs.beta_lo, o.springs.beta_hi});
    if (r.size() != 2 || br.size() != 2) throw ValidationError("simulate.springs: ranges must be [lo, hi]");
    o.springs.lo = r[0];
    o.springs.hi = r[1];
    o.springs.beta_lo = br[0];
    o.springs.beta_hi = br[1];
    o.springs.min_sep = get(s, "min_sep", o.springs.min_sep);
    if (s.contains("beta") && s["beta"].is_array())
      o.springs.beta_list = get(s, "beta", std::vector<double>{});
    else
      o.springs.beta = get(s, "beta", o.springs.beta);
    o.springs.x = get(s, "x", o.springs.x);
    if (o.springs.kind == "explicit") o.springs.M = static_cast<int>(o.springs.x.size());
  }
  o.mu = get(j, "mu", o.mu);
  o.t0 = get(j, "t0", o.t0);
  o.T = get(j, "T", o.T);
  o.eps = get(j, "eps", o.eps);
  o.gamma = get(j, "gamma", o.gamma);
  o.dt = get(j, "dt", o.dt);
  o.ntyp = get(j, "ntyp", o.ntyp);
  o.p = get(j, "p", o.p);
  o.bc = parse_boundary(get(j, "bc", to_string(o.bc)));
  auto xr = get(j, "x_range", std::vector<double>{o.x_lo, o.x_hi});
  if (xr.size() != 2) throw ValidationError("simulate: x_range must be [lo, hi]");
  o.x_lo = xr[0];
  o.x_hi = xr[1];
  o.nx = get(j, "nx", o.nx);
  o.nt = get(j, "nt", o.nt);
  o.total_field = get(j, "total_field", o.total_field);
  o.probes = get(j, "probes", o.probes);
  o.self_convergence = get(j, "self_convergence", o.self_convergence);
  if (!(o.T > 0)) throw ValidationError("simulate: T must be positive");
  if (o.nx < 1 || o.nt < 1) throw ValidationError("simulate: nx and nt must be positive");
  return o;
}

json to_json(const SimulateOptions& o) {
  json s = {{"kind", o.springs.kind},
            {"M", o.springs.M},
            {"range", {o.springs.lo, o.springs.hi}},
            {"min_sep", o.springs.min_sep},
            {"beta_range", {o.springs.beta_lo, o.springs.beta_hi}},
            {"x", o.springs.x}};
  if (o.springs.beta_list.empty())
    s["beta"] = o.springs.beta;
  else
    s["beta"] = o.springs.beta_list;
  return {{"command", "simulate"},
          {"springs", s},
          {"mu", o.mu},
          {"t0", o.t0},
          {"T", o.T},
          {"eps", o.eps},
          {"gamma", o.gamma},
          {"dt", o.dt},
          {"ntyp", o.ntyp},
          {"p", o.p},
          {"bc", to_string(o.bc)},
          {"x_range", {o.x_lo, o.x_hi}},
          {"nx", o.nx},
          {"nt", o.nt},
          {"total_field", o.total_field},
          {"probes", o.probes},
          {"self_convergence", o.self_convergence}};
}

TimingOptions timing_from_json(const json& j) {
  check_keys(j, with_common({"M", "ntyp", "steps", "measured", "p", "eps", "gamma", "min_sep"}), "timing");
  TimingOptions o;
  o.Ms = get(j, "M", o.Ms);
  o.ntyp = get(j, "ntyp", o.ntyp);
  o.steps = get(j, "steps", o.steps);
  o.measured = get(j, "measured", o.measured);
  o.p = get(j, "p", o.p);
  o.eps = get(j, "eps", o.eps);
  o.gamma = get(j, "gamma", o.gamma);
  o.min_sep = get(j, "min_sep", o.min_sep);
  if (o.measured < 1 || o.steps < o.measured) throw ValidationError("timing: need 1 <= measured <= steps");
  for (int M : o.Ms)
    if (M < 2) throw ValidationError("timing: each M must be at least 2");
  return o;
}

json to_json(const TimingOptions& o) {
  return {{"command", "timing"}, {"M", o.Ms},   {"ntyp", o.ntyp},   {"steps", o.steps},    {"measured", o.measured},
          {"p", o.p},            {"eps", o.eps}, {"gamma", o.gamma}, {"min_sep", o.min_sep}};
}

StabilityOptions stability_from_json(const json& j) {
  check_keys(j,
             with_common({"decay_steps", "root_samples", "kappa_max", "bound_trials", "bound_steps", "conv_beta",
                          "conv_L", "conv_T", "conv_dts"}),
             "stability");
  StabilityOptions o;
  o.decay_steps = get(j, "decay_steps", o.decay_steps);
  o.root_samples = get(j, "root_samples", o.root_samples);
  o.kappa_max = get(j, "kappa_max", o.kappa_max);
  o.bound_trials = get(j, "bound_trials", o.bound_trials);
  o.bound_steps = get(j, "bound_steps", o.bound_steps);
  o.conv_beta = get(j, "conv_beta", o.conv_beta);
  o.conv_L = get(j, "conv_L", o.conv_L);
  o.conv_T = get(j, "conv_T", o.conv_T);
  o.conv_dts = get(j, "conv_dts", o.conv_dts);
  if (o.decay_steps < 2 || o.bound_steps < 1) throw ValidationError("stability: step counts too small");
  return o;
}

json to_json(const StabilityOptions& o) {
  return {{"command", "stability"},      {"decay_steps", o.decay_steps}, {"root_samples", o.root_samples},
          {"kappa_max", o.kappa_max},    {"bound_trials", o.bound_trials}, {"bound_steps", o.bound_steps},
          {"conv_beta", o.conv_beta},    {"conv_L", o.conv_L},          {"conv_T", o.conv_T},
          {"conv_dts", o.conv_dts}};
}

SpectraOptions spectra_from_json(const json& j) {
  check_keys(j, with_common({"probe", "pad_factor", "taper_fraction", "cavity_length", "band_half_width", "peaks"}),
             "spectra");
  SpectraOptions o;
  o.probe = get(j, "probe", o.probe);
  o.pad_factor = get(j, "pad_factor", o.pad_factor);
  o.taper_fraction = get(j, "taper_fraction", o.taper_fraction);
  o.cavity_length = get(j, "cavity_length", o.cavity_length);
  o.band_half_width = get(j, "band_half_width", o.band_half_width);
  o.peaks = get(j, "peaks", o.peaks);
  if (o.pad_factor < 1) throw ValidationError("spectra: pad_factor must be >= 1");
  if (!(o.taper_fraction >= 0 && o.taper_fraction < 0.5)) throw ValidationError("spectra: taper_fraction in [0, 0.5)");
  return o;
}

json to_json(const SpectraOptions& o) {
  return {{"command", "spectra"},
          {"probe", o.probe},
          {"pad_factor", o.pad_factor},
          {"taper_fraction", o.taper_fraction},
          {"cavity_length", o.cavity_length},
          {"band_half_width", o.band_half_width},
          {"peaks", o.peaks}};
}

namespace {

void cmd_converge(const CommandArgs& a, const json& cfg, std::ostream& log) {
  ConvergeOptions o = converge_from_json(cfg);
  ConvergeReport rep = run_converge(o, a.seed);
  auto f = open_out(fs::path(a.out) / "converge.csv");
  f << "p,dt,max_error,seconds\n";
  for (const auto& r : rep.rows) f << r.p << "," << r.dt << "," << r.error << "," << r.seconds << "\n";
  json orders = json::object();
  for (const auto& [p, v] : rep.order) orders[std::to_string(p)] = v;
  write_json(fs::path(a.out) / "converge_summary.json", {{"seed", a.seed}, {"M", o.M}, {"orders", orders}});
  for (const auto& [p, v] : rep.order) log << "p=" << p << " fitted order " << v << "\n";
}

void write_simulation(const CommandArgs& a, const SimulateOptions& o, const SimulateReport& rep) {
  const fs::path out(a.out);
  write_field_csv(rep.result.field, (out / "field.csv").string());
  write_field_binary(rep.result.field, (out / "field.bin").string());
  {
    auto f = open_out(out / "springs.csv");
    f << "x,beta\n";
    for (int j = 0; j < rep.springs.size(); ++j) f << rep.springs.x[j] << "," << rep.springs.beta[j] << "\n";
  }
  if (!o.probes.empty()) {
    auto f = open_out(out / "probes.csv");
    f << "t";
    for (double x : o.probes) f << ",u@" << x;
    f << "\n";
    for (size_t n = 0; n < rep.result.probe_t.size(); ++n) {
      f << rep.result.probe_t[n];
      for (const auto& u : rep.result.probe_u) f << "," << u[n];
      f << "\n";
    }
  }
  json s = {{"seed", a.seed},
            {"M", rep.springs.size()},
            {"dt", rep.dt},
            {"scale", rep.result.scale},
            {"ntyp", rep.result.ntyp},
            {"mu", o.mu},
            {"t0", o.t0},
            {"probes", o.probes},
            {"total_field", o.total_field}};
  if (rep.self_difference >= 0) s["self_difference"] = rep.self_difference;
  write_json(out / "summary.json", s);
}

void cmd_simulate(const CommandArgs& a, const json& cfg, std::ostream& log) {
  SimulateOptions o = simulate_from_json(cfg);
  auto diag = open_out(fs::path(a.out) / "diagnostics.jsonl");
  SimulateReport rep = run_simulate(o, a.seed, &diag);
  write_simulation(a, o, rep);
  log << "M=" << rep.springs.size() << " dt=" << rep.dt << " steps=" << rep.result.step_ms.size();
  if (rep.self_difference >= 0) log << " self-convergence difference " << rep.self_difference;
  log << "\n";
}

std::vector<std::vector<double>> read_csv_columns(const fs::path& p, size_t& cols) {
  std::ifstream f(p);
  if (!f) throw ValidationError("missing probe signal: " + p.string());
  std::string line;
  std::getline(f, line);
  cols = static_cast<size_t>(std::count(line.begin(), line.end(), ',')) + 1;
  std::vector<std::vector<double>> c(cols);
  while (std::getline(f, line)) {
    std::stringstream ss(line);
    std::string cell;
    for (size_t i = 0; i < cols && std::getline(ss, cell, ','); ++i) c[i].push_back(std::stod(cell));
  }
  return c;
}

void cmd_spectra(const CommandArgs& a, const json& cfg, std::ostream& log) {
  SpectraOptions so = spectra_from_json(cfg);
  const fs::path out(a.out);
  std::ifstream sf(out / "summary.json");
  if (!sf) throw ValidationError("missing probe signal: no simulate run in " + a.out);
  json s = json::parse(sf);
  size_t cols = 0;
  auto c = read_csv_columns(out / "probes.csv", cols);
  if (so.probe < 0 || static_cast<size_t>(so.probe) + 1 >= cols) throw ValidationError("missing probe signal");
  SimulateOptions o;
  o.mu = s.at("mu").get<double>();
  o.t0 = s.at("t0").get<double>();
  o.probes = s.at("probes").get<std::vector<double>>();
  o.total_field = s.at("total_field").get<bool>();
  SimulateReport rep;
  rep.dt = s.at("dt").get<double>();
  rep.result.probe_t = c[0];
  for (size_t i = 1; i < cols; ++i) rep.result.probe_u.push_back(c[i]);
  TransmissionSpectra ts = transmission_spectra(rep, o, so.probe, so.pad_factor, so.taper_fraction);

  double peak = *std::max_element(ts.incident.mag.begin(), ts.incident.mag.end());
  double norm = peak > 0 ? 1 / peak : 1;
  for (auto [name, sp] : {std::pair{"spectrum_incident.csv", &ts.incident}, {"spectrum_transmitted.csv", &ts.transmitted}}) {
    auto f = open_out(out / name);
    f << "omega,magnitude\n";
    for (size_t i = 0; i < sp->omega.size(); ++i) f << sp->omega[i] << "," << sp->mag[i] * norm << "\n";
  }
  auto peaks = spectrum_peaks(ts.transmitted, so.peaks, 0.5 * 3.141592653589793 / so.cavity_length);
  double oob = out_of_band_energy(ts.transmitted, so.cavity_length, so.band_half_width);
  write_json(out / "spectra_summary.json", {{"probe_x", ts.probe_x},
                                            {"incident_energy", ts.incident_energy},
                                            {"transmitted_energy", ts.transmitted_energy},
                                            {"out_of_band_energy", oob},
                                            {"peaks", peaks}});
  log << "transmitted/incident energy " << ts.transmitted_energy / ts.incident_energy << "\n";
}

void cmd_timing(const CommandArgs& a, const json& cfg, std::ostream& log) {
  TimingOptions o = timing_from_json(cfg);
  TimingReport rep = run_timing(o, a.seed);
  auto f = open_out(fs::path(a.out) / "timing.csv");
  f << "M,dt,ntyp,median_ms,throughput\n";
  for (const auto& r : rep.rows)
    f << r.M << "," << r.dt << "," << r.ntyp << "," << r.median_ms << "," << r.throughput << "\n";
  if (rep.rows.size() >= 2) {
    write_json(fs::path(a.out) / "timing_summary.json", {{"exponent", rep.exponent}});
    log << "fitted exponent " << rep.exponent << "\n";
  }
}

void cmd_stability(const CommandArgs& a, const json& cfg, std::ostream& log) {
  StabilityOptions o = stability_from_json(cfg);
  StabilityReport rep = run_stability(o, a.seed);
  auto f = open_out(fs::path(a.out) / "stability.csv");
  f << "check,regime,params,max_root,bound_C,observed_ratio,observed_order,expected,observed,pass\n";
  for (const auto& r : rep.rows)
    f << r.check << "," << r.regime << "," << r.params << "," << r.max_root << "," << r.bound_C << "," << r.ratio
      << "," << r.order << "," << r.expected << "," << r.observed << "," << r.pass() << "\n";
  log << (rep.all_pass() ? "all stability checks pass" : "some stability checks fail") << "\n";
}

}  // namespace

int run_command(const CommandArgs& args, std::ostream& log) {
  try {
    json cfg = args.config.empty() ? json::object() : load_config(args.config, args.full);
    fs::create_directories(args.out);
    if (args.command == "converge")
      cmd_converge(args, cfg, log);
    else if (args.command == "simulate")
      cmd_simulate(args, cfg, log);
    else if (args.command == "timing")
      cmd_timing(args, cfg, log);
    else if (args.command == "stability")
      cmd_stability(args, cfg, log);
    else if (args.command == "spectra")
      cmd_spectra(args, cfg, log);
    else
      throw ValidationError("unknown command '" + args.command + "'");
  } catch (const ValidationError& e) {
    log << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericalError& e) {
    log << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const json::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace wfp::cli
