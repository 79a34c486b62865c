#include "commands.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "qstrobe/analytic.hpp"
#include "qstrobe/config.hpp"
#include "qstrobe/csv.hpp"
#include "qstrobe/spectral.hpp"
#include "qstrobe/strategy.hpp"
#include "qstrobe/svg.hpp"

namespace qstrobe::cli {

namespace {

namespace fs = std::filesystem;

struct Loaded {
  RunConfig config;
  bool engine_set_in_file = false;
};

// Whether the config text assigns the top-level `engine` key (needed to tell
// an explicit `engine = numeric` apart from the struct default).
bool assigns_engine(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq);
    const auto begin = key.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    const auto end = key.find_last_not_of(" \t\r");
    if (key.substr(begin, end - begin + 1) == "engine") return true;
  }
  return false;
}

Loaded load(const CliOptions& options) {
  Loaded loaded;
  if (!options.config_path.empty()) {
    std::ifstream in(options.config_path);
    if (!in)
      throw ConfigError("cannot open config file '" + options.config_path +
                        "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    loaded.config = parse_config_text(buffer.str());
    loaded.engine_set_in_file = assigns_engine(buffer.str());
  }
  if (!options.out_dir.empty()) loaded.config.out_dir = options.out_dir;
  if (options.threads > 0) loaded.config.threads = options.threads;
  return loaded;
}

// Figure commands have their own engine default; an explicit --engine flag or
// an engine assignment in the config file overrides it.
Engine resolve_engine(const CliOptions& options, const Loaded& loaded,
                      Engine command_default) {
  if (!options.engine.empty()) return engine_from_string(options.engine);
  if (loaded.engine_set_in_file) return loaded.config.engine;
  return command_default;
}

fs::path resolve_out_dir(RunConfig& config) {
  if (config.out_dir.empty()) {
    const char* env = std::getenv("QSTROBE_OUT_DIR");
    config.out_dir = (env && *env) ? env : "qstrobe_out";
  }
  fs::path dir(config.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec && !fs::is_directory(dir))
    throw ConfigError("cannot create output directory '" + config.out_dir +
                      "': " + ec.message());
  return dir;
}

void note(const fs::path& path) {
  std::cout << "wrote " << path.string() << '\n';
}

void write_manifest(const fs::path& dir, const std::string& name,
                    const RunConfig& config) {
  const fs::path path = dir / name;
  std::ofstream out(path);
  if (!out)
    throw ConfigError("cannot open '" + path.string() + "' for writing");
  out << serialize_config(config);
  if (!out)
    throw ConfigError("write to '" + path.string() + "' failed");
  note(path);
}

std::string format_delta_t(double delta_t_over_T) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.3f", delta_t_over_T);
  return buffer;
}

std::vector<std::array<double, 2>> trace_points(const UncertaintyTrace& t) {
  std::vector<std::array<double, 2>> points;
  points.reserve(t.entries.size());
  for (const TraceEntry& e : t.entries)
    points.push_back({static_cast<double>(e.n), e.delta_a_eff});
  return points;
}

std::vector<std::array<double, 2>> scan_points(const ScanResult& scan,
                                               double period) {
  std::vector<std::array<double, 2>> points;
  points.reserve(scan.points.size());
  for (const ScanPoint& p : scan.points)
    if (p.error.empty()) points.push_back({p.quiescent / period, p.asymptote});
  return points;
}

void write_overlay_trace_csv(const fs::path& path,
                             const UncertaintyTrace& analytic,
                             const UncertaintyTrace& numeric) {
  if (analytic.entries.size() != numeric.entries.size())
    throw NumericalError("cli",
                         "analytic and numeric traces have different lengths");
  CsvWriter csv(path.string());
  csv.header({"n", "delta_a_eff_analytic", "pre_width_analytic",
              "delta_a_eff_numeric", "pre_width_numeric"});
  for (std::size_t i = 0; i < analytic.entries.size(); ++i) {
    const TraceEntry& a = analytic.entries[i];
    const TraceEntry& b = numeric.entries[i];
    csv.row({a.n, a.delta_a_eff, a.pre_width, b.delta_a_eff, b.pre_width});
  }
}

void report_scan_failures(const ScanResult& scan, double period) {
  for (const ScanPoint& p : scan.points)
    if (!p.error.empty())
      std::cerr << "scan point dT/T = " << p.quiescent / period
                << " failed: " << p.error << '\n';
}

// ---------------------------------------------------------------------------

void cmd_fig1(const CliOptions& options) {
  Loaded loaded = load(options);
  RunConfig& config = loaded.config;
  config.oscillator.lambda = 0.0;
  config.n_max = 20;
  config.stop_at_convergence = false;
  config.initial_state.kind = InitialState::Kind::gaussian;
  config.engine = resolve_engine(options, loaded, Engine::both);
  validate(config);
  const fs::path dir = resolve_out_dir(config);

  const UnitSystem units = config.units;
  const double period = config.oscillator.period();
  const StrategySpec base = make_strategy_spec(config);
  const bool do_analytic = config.engine != Engine::numeric;
  const bool do_numeric = config.engine != Engine::analytic;

  std::vector<SvgSeries> series;
  for (double ratio : {0.25, 0.50, 0.75}) {
    StrategySpec spec = base;
    spec.quiescent = ratio * period;
    UncertaintyTrace analytic, numeric;
    if (do_analytic)
      analytic = run_strategy(units, spec, Engine::analytic);
    if (do_numeric)
      numeric = run_strategy(units, spec, Engine::numeric, config.grid,
                             config.evolution);

    char short_tag[16];
    std::snprintf(short_tag, sizeof(short_tag), "%.2f", ratio);
    const std::string tag = format_delta_t(ratio);
    const fs::path csv_path =
        dir / ("fig1_trace_dT" + std::string(short_tag) + ".csv");
    if (do_analytic && do_numeric)
      write_overlay_trace_csv(csv_path, analytic, numeric);
    else
      write_trace_csv(csv_path.string(), do_analytic ? analytic : numeric);
    note(csv_path);

    if (do_analytic)
      series.push_back({"dT/T=" + tag + " analytic", trace_points(analytic)});
    if (do_numeric)
      series.push_back({"dT/T=" + tag + " numeric", trace_points(numeric)});
  }

  const fs::path svg_path = dir / "fig1.svg";
  write_line_chart(svg_path.string(), series,
                   {"Effective uncertainty per measurement", "n",
                    "delta_a_eff"});
  note(svg_path);
  write_manifest(dir, "fig1_manifest.cfg", config);
}

void cmd_fig2(const CliOptions& options) {
  Loaded loaded = load(options);
  RunConfig& config = loaded.config;
  config.oscillator.lambda = 0.0;
  config.initial_state.kind = InitialState::Kind::gaussian;
  config.scan = {0.05, 1.75, 171};
  config.engine = resolve_engine(options, loaded, Engine::analytic);
  validate(config);
  const fs::path dir = resolve_out_dir(config);

  const UnitSystem units = config.units;
  const double period = config.oscillator.period();
  const std::vector<double> delta_ts = scan_values(config.scan, period);

  struct Curve {
    double tau_over_T;
    const char* file;
    const char* label;
  };
  const Curve curves[] = {
      {0.0, "fig2_scan_tau0.csv", "tau = 0"},
      {1e-5, "fig2_scan_tau1e-5T.csv", "tau = 1e-5 T"},
      {0.1, "fig2_scan_tau0.1T.csv", "tau = 0.1 T"},
  };

  std::vector<SvgSeries> series;
  for (const Curve& curve : curves) {
    RunConfig local = config;
    local.tau_over_T = curve.tau_over_T;
    StrategySpec spec = make_strategy_spec(local);
    const ScanResult scan =
        scan_quiescent(units, spec, delta_ts, config.engine, config.grid,
                       config.evolution, config.threads);
    report_scan_failures(scan, period);
    const fs::path csv_path = dir / curve.file;
    write_scan_csv(csv_path.string(), scan, period);
    note(csv_path);
    series.push_back({curve.label, scan_points(scan, period)});
  }

  const fs::path svg_path = dir / "fig2.svg";
  write_line_chart(svg_path.string(), series,
                   {"Asymptotic effective uncertainty (harmonic)", "dT/T",
                    "asymptote"});
  note(svg_path);
  write_manifest(dir, "fig2_manifest.cfg", config);
}

void cmd_fig3(const CliOptions& options) {
  Loaded loaded = load(options);
  RunConfig& config = loaded.config;
  config.oscillator = {1.0, 1.0, 4.0};
  config.n_max = 30;
  config.stop_at_convergence = false;
  config.engine = resolve_engine(options, loaded, Engine::numeric);
  validate(config);
  const fs::path dir = resolve_out_dir(config);

  const UnitSystem units = config.units;
  const double period = config.oscillator.period();
  const StrategySpec base = make_strategy_spec(config);

  std::vector<SvgSeries> series;
  for (double ratio : {0.300, 0.675}) {
    for (InitialState::Kind kind :
         {InitialState::Kind::gaussian, InitialState::Kind::double_peak}) {
      StrategySpec spec = base;
      spec.quiescent = ratio * period;
      spec.initial_state.kind = kind;
      const bool gaussian = kind == InitialState::Kind::gaussian;
      const UncertaintyTrace trace = run_strategy(
          units, spec, config.engine, config.grid, config.evolution);
      const std::string tag = format_delta_t(ratio);
      const fs::path csv_path =
          dir / ("fig3_trace_dT" + tag + (gaussian ? "_gaussian" : "_double_peak") +
                 ".csv");
      write_trace_csv(csv_path.string(), trace);
      note(csv_path);
      series.push_back({"dT/T=" + tag + (gaussian ? " gaussian" : " double peak"),
                        trace_points(trace)});
    }
  }

  const fs::path svg_path = dir / "fig3.svg";
  write_line_chart(svg_path.string(), series,
                   {"Effective uncertainty per measurement (quartic)", "n",
                    "delta_a_eff"});
  note(svg_path);
  write_manifest(dir, "fig3_manifest.cfg", config);
}

void cmd_fig4(const CliOptions& options) {
  Loaded loaded = load(options);
  RunConfig& config = loaded.config;
  config.oscillator = {1.0, 1.0, 4.0};
  config.tau_over_T = 0.0;
  config.scan = {0.05, 1.0, 191};
  if (config.spectrum.levels < 4) config.spectrum.levels = 4;
  config.engine = resolve_engine(options, loaded, Engine::numeric);
  validate(config);
  const fs::path dir = resolve_out_dir(config);

  const UnitSystem units = config.units;
  const double period = config.oscillator.period();
  const StrategySpec spec = make_strategy_spec(config);
  const std::vector<double> delta_ts = scan_values(config.scan, period);

  const ScanResult scan =
      scan_quiescent(units, spec, delta_ts, config.engine, config.grid,
                     config.evolution, config.threads);
  report_scan_failures(scan, period);
  const fs::path scan_path = dir / "fig4_scan.csv";
  write_scan_csv(scan_path.string(), scan, period);
  note(scan_path);

  const SpectrumResult spectrum = eigenvalues_fd(
      units, config.oscillator, config.spectrum.levels,
      Grid::symmetric(config.spectrum.x_max, config.spectrum.n_points));
  const auto candidates = predict_minima(spectrum, config.scan.stop_over_T);
  const fs::path minima_path = dir / "fig4_minima.csv";
  write_minima_csv(minima_path.string(), candidates);
  note(minima_path);

  const fs::path svg_path = dir / "fig4.svg";
  write_line_chart(svg_path.string(),
                   {{"tau = 0", scan_points(scan, period)}},
                   {"Asymptotic effective uncertainty (quartic)", "dT/T",
                    "asymptote"});
  note(svg_path);
  write_manifest(dir, "fig4_manifest.cfg", config);
}

void cmd_run(const CliOptions& options) {
  Loaded loaded = load(options);
  RunConfig& config = loaded.config;
  config.engine = resolve_engine(options, loaded, config.engine);
  validate(config);
  const fs::path dir = resolve_out_dir(config);

  const UnitSystem units = config.units;
  const StrategySpec spec = make_strategy_spec(config);
  std::vector<SvgSeries> series;
  for (Engine engine : {Engine::analytic, Engine::numeric}) {
    if (config.engine != engine && config.engine != Engine::both) continue;
    const UncertaintyTrace trace =
        run_strategy(units, spec, engine, config.grid, config.evolution);
    const fs::path csv_path =
        dir / ("trace_" + engine_to_string(engine) + ".csv");
    write_trace_csv(csv_path.string(), trace);
    note(csv_path);
    series.push_back({engine_to_string(engine), trace_points(trace)});
    if (trace.converged)
      std::cout << engine_to_string(engine) << " asymptote "
                << format_sig12(*trace.asymptote) << " after "
                << trace.entries.size() << " measurements\n";
  }

  const fs::path svg_path = dir / "trace.svg";
  write_line_chart(svg_path.string(), series,
                   {"Effective uncertainty per measurement", "n",
                    "delta_a_eff"});
  note(svg_path);
  write_manifest(dir, "run_manifest.cfg", config);
}

void cmd_scan(const CliOptions& options) {
  Loaded loaded = load(options);
  RunConfig& config = loaded.config;
  config.engine = resolve_engine(options, loaded, config.engine);
  validate(config);
  const fs::path dir = resolve_out_dir(config);

  const UnitSystem units = config.units;
  const double period = config.oscillator.period();
  const StrategySpec spec = make_strategy_spec(config);
  const std::vector<double> delta_ts = scan_values(config.scan, period);

  std::vector<SvgSeries> series;
  for (Engine engine : {Engine::analytic, Engine::numeric}) {
    if (config.engine != engine && config.engine != Engine::both) continue;
    const ScanResult scan = scan_quiescent(
        units, spec, delta_ts, engine, config.grid, config.evolution,
        config.threads);
    report_scan_failures(scan, period);
    const fs::path csv_path =
        dir / ("scan_" + engine_to_string(engine) + ".csv");
    write_scan_csv(csv_path.string(), scan, period);
    note(csv_path);
    series.push_back({engine_to_string(engine), scan_points(scan, period)});
  }

  const fs::path svg_path = dir / "scan.svg";
  write_line_chart(svg_path.string(), series,
                   {"Asymptotic effective uncertainty", "dT/T", "asymptote"});
  note(svg_path);
  write_manifest(dir, "scan_manifest.cfg", config);
}

void cmd_spectrum(const CliOptions& options) {
  Loaded loaded = load(options);
  RunConfig& config = loaded.config;
  validate(config);
  const fs::path dir = resolve_out_dir(config);

  const UnitSystem units = config.units;
  const Grid grid =
      Grid::symmetric(config.spectrum.x_max, config.spectrum.n_points);

  const SpectrumResult fd =
      eigenvalues_fd(units, config.oscillator, config.spectrum.levels, grid);
  const SpectrumResult wkb =
      eigenvalues_wkb(units, config.oscillator, config.spectrum.levels);

  const struct {
    const SpectrumResult& s;
    const char* spectrum_file;
    const char* periods_file;
  } tables[] = {
      {fd, "spectrum_diagonalization.csv", "periods_diagonalization.csv"},
      {wkb, "spectrum_wkb.csv", "periods_wkb.csv"},
  };
  for (const auto& t : tables) {
    const fs::path spath = dir / t.spectrum_file;
    write_spectrum_csv(spath.string(), t.s);
    note(spath);
    const fs::path ppath = dir / t.periods_file;
    write_periods_csv(ppath.string(), t.s);
    note(ppath);
  }

  if (config.spectrum.levels >= 4) {
    const auto candidates = predict_minima(fd, config.scan.stop_over_T);
    const fs::path mpath = dir / "minima_candidates.csv";
    write_minima_csv(mpath.string(), candidates);
    note(mpath);
  } else {
    std::cout << "spectrum.levels < 4: skipping minima prediction\n";
  }
  write_manifest(dir, "spectrum_manifest.cfg", config);
}

}  // namespace

void run_command(const std::string& name, const CliOptions& options) {
  if (name == "fig1") return cmd_fig1(options);
  if (name == "fig2") return cmd_fig2(options);
  if (name == "fig3") return cmd_fig3(options);
  if (name == "fig4") return cmd_fig4(options);
  if (name == "run") return cmd_run(options);
  if (name == "scan") return cmd_scan(options);
  if (name == "spectrum") return cmd_spectrum(options);
  throw ConfigError("unknown command '" + name + "'");
}

}  // namespace qstrobe::cli
