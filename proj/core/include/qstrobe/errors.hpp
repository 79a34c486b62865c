#pragma once

#include <stdexcept>
#include <string>

namespace qstrobe {

// Invalid or inconsistent run parameters; rejected before any computation.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical contract was violated mid-computation (domain containment,
// scheme stability, convergence). Carries the reporting module's name.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& module, const std::string& what)
      : std::runtime_error(module + ": " + what), module_(module) {}
  const std::string& module() const { return module_; }

 private:
  std::string module_;
};

}  // namespace qstrobe
