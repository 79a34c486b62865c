#pragma once

#include <string>

namespace qstrobe::cli {

struct CliOptions {
  std::string config_path;  // --config (empty: built-in defaults)
  std::string out_dir;      // --out override
  std::string engine;       // --engine override (empty: command default)
  int threads = 0;          // --threads override (0: from config)
};

// Dispatch a subcommand by name. Throws ConfigError / NumericalError.
void run_command(const std::string& name, const CliOptions& options);

}  // namespace qstrobe::cli
