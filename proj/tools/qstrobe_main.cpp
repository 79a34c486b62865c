#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "qstrobe/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "qstrobe: repeated finite-accuracy position measurements on 1-D "
      "quantum oscillators — per-measurement effective uncertainty, its "
      "asymptote, and the optimal quiescent time"};
  app.require_subcommand(1);

  qstrobe::cli::CliOptions options;
  const struct {
    const char* name;
    const char* description;
  } commands[] = {
      {"fig1", "Uncertainty traces, harmonic, dT/T in {1/4, 1/2, 3/4}"},
      {"fig2", "Asymptote vs quiescent time, harmonic, three readout "
               "durations"},
      {"fig3", "Uncertainty traces, quartic, two quiescent times, two "
               "initial states"},
      {"fig4", "Asymptote vs quiescent time, quartic, impulsive readout"},
      {"run", "Single protocol run from the config"},
      {"scan", "Quiescent-time scan from the config"},
      {"spectrum", "Energy levels, characteristic periods, predicted minima"},
  };
  for (const auto& command : commands) {
    CLI::App* sub = app.add_subcommand(command.name, command.description);
    sub->add_option("--config", options.config_path,
                    "Config file (flat key=value)")
        ->check(CLI::ExistingFile);
    sub->add_option("--out", options.out_dir, "Output directory");
    sub->add_option("--engine", options.engine,
                    "Computation engine: analytic, numeric, or both")
        ->check(CLI::IsMember({"analytic", "numeric", "both"}));
    sub->add_option("--threads", options.threads, "Worker threads for scans")
        ->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    qstrobe::cli::run_command(name, options);
  } catch (const qstrobe::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const qstrobe::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
