#include "qstrobe/trace.hpp"

#include <algorithm>
#include <limits>

#include "qstrobe/errors.hpp"

namespace qstrobe {

Asymptote asymptotic_value(const std::vector<double>& values, double rel_tol,
                           int window) {
  if (window < 1)
    throw ConfigError("asymptotic_value: window must be >= 1");
  if (static_cast<int>(values.size()) < window)
    throw ConfigError("asymptotic_value: need at least `window` values");

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (std::size_t i = values.size() - window; i < values.size(); ++i) {
    lo = std::min(lo, values[i]);
    hi = std::max(hi, values[i]);
    sum += values[i];
  }
  const double scale = std::max(std::abs(lo), 1e-300);
  return {sum / window, (hi - lo) / scale < rel_tol};
}

Asymptote asymptotic_value(const UncertaintyTrace& trace, double rel_tol,
                           int window) {
  std::vector<double> values;
  values.reserve(trace.entries.size());
  for (const auto& e : trace.entries) values.push_back(e.delta_a_eff);
  return asymptotic_value(values, rel_tol, window);
}

}  // namespace qstrobe
