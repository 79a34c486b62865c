#include "qstrobe/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace qstrobe {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  const char* start = value.c_str();
  char* end = nullptr;
  const double v = std::strtod(start, &end);
  if (end == start || *end != '\0')
    throw ConfigError("config key '" + key + "': '" + value +
                      "' is not a number");
  return v;
}

int parse_int(const std::string& key, const std::string& value) {
  const char* start = value.c_str();
  char* end = nullptr;
  const long v = std::strtol(start, &end, 10);
  if (end == start || *end != '\0')
    throw ConfigError("config key '" + key + "': '" + value +
                      "' is not an integer");
  return static_cast<int>(v);
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw ConfigError("config key '" + key + "': expected 'true' or 'false', "
                    "got '" + value + "'");
}

std::string format_double(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

void apply(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "units.hbar") c.units.hbar = parse_double(key, value);
  else if (key == "oscillator.mass") c.oscillator.m = parse_double(key, value);
  else if (key == "oscillator.omega")
    c.oscillator.omega = parse_double(key, value);
  else if (key == "oscillator.lambda")
    c.oscillator.lambda = parse_double(key, value);
  else if (key == "measurement.delta_a") c.delta_a = parse_double(key, value);
  else if (key == "measurement.tau_over_T")
    c.tau_over_T = parse_double(key, value);
  else if (key == "strategy.quiescent_over_T")
    c.quiescent_over_T = parse_double(key, value);
  else if (key == "strategy.n_max") c.n_max = parse_int(key, value);
  else if (key == "strategy.rel_tol") c.rel_tol = parse_double(key, value);
  else if (key == "strategy.window") c.window = parse_int(key, value);
  else if (key == "strategy.stop_at_convergence")
    c.stop_at_convergence = parse_bool(key, value);
  else if (key == "strategy.realize_at_mean")
    c.realize_at_mean = parse_bool(key, value);
  else if (key == "initial.kind") {
    if (value == "gaussian")
      c.initial_state.kind = InitialState::Kind::gaussian;
    else if (value == "double_peak")
      c.initial_state.kind = InitialState::Kind::double_peak;
    else
      throw ConfigError("config key 'initial.kind': expected 'gaussian' or "
                        "'double_peak', got '" + value + "'");
  } else if (key == "initial.sigma")
    c.initial_state.sigma = parse_double(key, value);
  else if (key == "initial.sigma_p")
    c.initial_state.sigma_p = parse_double(key, value);
  else if (key == "initial.x0") c.initial_state.x0 = parse_double(key, value);
  else if (key == "grid.x_min") c.grid.x_min = parse_double(key, value);
  else if (key == "grid.x_max") c.grid.x_max = parse_double(key, value);
  else if (key == "grid.n_points") c.grid.n_points = parse_int(key, value);
  else if (key == "evolution.dt") c.evolution.dt = parse_double(key, value);
  else if (key == "evolution.dt_free_fraction")
    c.evolution.dt_free_fraction = parse_double(key, value);
  else if (key == "evolution.dt_measured_fraction")
    c.evolution.dt_measured_fraction = parse_double(key, value);
  else if (key == "evolution.boundary_guard")
    c.evolution.boundary_guard = parse_double(key, value);
  else if (key == "scan.start_over_T")
    c.scan.start_over_T = parse_double(key, value);
  else if (key == "scan.stop_over_T")
    c.scan.stop_over_T = parse_double(key, value);
  else if (key == "scan.points") c.scan.points = parse_int(key, value);
  else if (key == "spectrum.levels") c.spectrum.levels = parse_int(key, value);
  else if (key == "spectrum.x_max")
    c.spectrum.x_max = parse_double(key, value);
  else if (key == "spectrum.n_points")
    c.spectrum.n_points = parse_int(key, value);
  else if (key == "output.dir") c.out_dir = value;
  else if (key == "engine") c.engine = engine_from_string(value);
  else if (key == "threads") c.threads = parse_int(key, value);
  else
    throw ConfigError("unknown config key '" + key + "'");
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig config;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key=value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": empty key");
    apply(config, key, value);
  }
  return config;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream out;
  out << "units.hbar = " << format_double(c.units.hbar) << '\n';
  out << "oscillator.mass = " << format_double(c.oscillator.m) << '\n';
  out << "oscillator.omega = " << format_double(c.oscillator.omega) << '\n';
  out << "oscillator.lambda = " << format_double(c.oscillator.lambda) << '\n';
  out << "measurement.delta_a = " << format_double(c.delta_a) << '\n';
  out << "measurement.tau_over_T = " << format_double(c.tau_over_T) << '\n';
  out << "strategy.quiescent_over_T = " << format_double(c.quiescent_over_T)
      << '\n';
  out << "strategy.n_max = " << c.n_max << '\n';
  out << "strategy.rel_tol = " << format_double(c.rel_tol) << '\n';
  out << "strategy.window = " << c.window << '\n';
  out << "strategy.stop_at_convergence = "
      << (c.stop_at_convergence ? "true" : "false") << '\n';
  out << "strategy.realize_at_mean = "
      << (c.realize_at_mean ? "true" : "false") << '\n';
  out << "initial.kind = "
      << (c.initial_state.kind == InitialState::Kind::gaussian
              ? "gaussian"
              : "double_peak")
      << '\n';
  out << "initial.sigma = " << format_double(c.initial_state.sigma) << '\n';
  out << "initial.sigma_p = " << format_double(c.initial_state.sigma_p)
      << '\n';
  out << "initial.x0 = " << format_double(c.initial_state.x0) << '\n';
  out << "grid.x_min = " << format_double(c.grid.x_min) << '\n';
  out << "grid.x_max = " << format_double(c.grid.x_max) << '\n';
  out << "grid.n_points = " << c.grid.n_points << '\n';
  out << "evolution.dt = " << format_double(c.evolution.dt) << '\n';
  out << "evolution.dt_free_fraction = "
      << format_double(c.evolution.dt_free_fraction) << '\n';
  out << "evolution.dt_measured_fraction = "
      << format_double(c.evolution.dt_measured_fraction) << '\n';
  out << "evolution.boundary_guard = "
      << format_double(c.evolution.boundary_guard) << '\n';
  out << "scan.start_over_T = " << format_double(c.scan.start_over_T) << '\n';
  out << "scan.stop_over_T = " << format_double(c.scan.stop_over_T) << '\n';
  out << "scan.points = " << c.scan.points << '\n';
  out << "spectrum.levels = " << c.spectrum.levels << '\n';
  out << "spectrum.x_max = " << format_double(c.spectrum.x_max) << '\n';
  out << "spectrum.n_points = " << c.spectrum.n_points << '\n';
  out << "output.dir = " << c.out_dir << '\n';
  out << "engine = " << engine_to_string(c.engine) << '\n';
  out << "threads = " << c.threads << '\n';
  return out.str();
}

void validate(const RunConfig& c) {
  validate(c.units);
  validate(c.oscillator);
  if (!(c.delta_a > 0.0))
    throw ConfigError("measurement.delta_a must be > 0");
  if (!(c.tau_over_T >= 0.0))
    throw ConfigError("measurement.tau_over_T must be >= 0");
  validate(make_strategy_spec(c));
  validate(c.grid);
  if (!(c.evolution.dt >= 0.0)) throw ConfigError("evolution.dt must be >= 0");
  if (!(c.evolution.dt_free_fraction > 0.0))
    throw ConfigError("evolution.dt_free_fraction must be > 0");
  if (!(c.evolution.dt_measured_fraction > 0.0))
    throw ConfigError("evolution.dt_measured_fraction must be > 0");
  if (!(c.evolution.boundary_guard > 0.0 && c.evolution.boundary_guard < 1.0))
    throw ConfigError("evolution.boundary_guard must be in (0, 1)");
  if (!(c.scan.start_over_T >= 0.0))
    throw ConfigError("scan.start_over_T must be >= 0");
  if (!(c.scan.stop_over_T >= c.scan.start_over_T))
    throw ConfigError("scan.stop_over_T must be >= scan.start_over_T");
  if (c.scan.points < 1) throw ConfigError("scan.points must be >= 1");
  if (c.scan.points == 1 && c.scan.stop_over_T != c.scan.start_over_T)
    throw ConfigError("scan.points = 1 requires start_over_T == stop_over_T");
  if (c.scan.points > 1 && c.scan.stop_over_T == c.scan.start_over_T)
    throw ConfigError("scan with equal endpoints requires scan.points = 1");
  if (c.spectrum.levels < 1 || c.spectrum.levels > 10)
    throw ConfigError("spectrum.levels must be in [1, 10]");
  if (!(c.spectrum.x_max > 0.0))
    throw ConfigError("spectrum.x_max must be > 0");
  if (c.spectrum.n_points < 128)
    throw ConfigError("spectrum.n_points must be >= 128");
  if (c.threads < 1) throw ConfigError("threads must be >= 1");
}

Engine engine_from_string(const std::string& name) {
  if (name == "analytic") return Engine::analytic;
  if (name == "numeric") return Engine::numeric;
  if (name == "both") return Engine::both;
  throw ConfigError("engine must be 'analytic', 'numeric', or 'both', got '" +
                    name + "'");
}

std::string engine_to_string(Engine engine) {
  switch (engine) {
    case Engine::analytic: return "analytic";
    case Engine::numeric: return "numeric";
    case Engine::both: return "both";
  }
  throw ConfigError("unknown engine value");
}

StrategySpec make_strategy_spec(const RunConfig& c) {
  StrategySpec spec;
  spec.oscillator = c.oscillator;
  spec.measurement.delta_a = c.delta_a;
  spec.measurement.tau = c.tau_over_T * c.oscillator.period();
  spec.measurement.epsilon = 0.0;
  spec.quiescent = c.quiescent_over_T * c.oscillator.period();
  spec.n_max = c.n_max;
  spec.initial_state = c.initial_state;
  spec.rel_tol = c.rel_tol;
  spec.window = c.window;
  spec.stop_at_convergence = c.stop_at_convergence;
  spec.realize_at_mean = c.realize_at_mean;
  return spec;
}

std::vector<double> scan_values(const ScanRange& range, double period) {
  if (!(period > 0.0)) throw ConfigError("scan_values: period must be > 0");
  if (range.points < 1) throw ConfigError("scan.points must be >= 1");
  std::vector<double> values(range.points);
  if (range.points == 1) {
    values[0] = range.start_over_T * period;
    return values;
  }
  const double step =
      (range.stop_over_T - range.start_over_T) / (range.points - 1);
  for (int i = 0; i < range.points; ++i)
    values[i] = (range.start_over_T + step * i) * period;
  return values;
}

}  // namespace qstrobe
