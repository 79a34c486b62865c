#include "qstrobe/model.hpp"

#include <cmath>

namespace qstrobe {

void validate(const UnitSystem& units) {
  if (!(units.hbar > 0.0))
    throw ConfigError("units.hbar must be > 0");
}

void validate(const Oscillator& osc) {
  if (!(osc.m > 0.0))
    throw ConfigError("oscillator.mass must be > 0");
  if (!(osc.omega > 0.0))
    throw ConfigError("oscillator.omega must be > 0");
  if (!(osc.lambda >= 0.0))
    throw ConfigError(
        "oscillator.lambda must be >= 0 (a negative quartic coupling is "
        "unbounded below)");
}

void validate(const MeasurementSpec& meas) {
  if (!(meas.delta_a > 0.0))
    throw ConfigError("measurement.delta_a must be > 0");
  if (!(meas.tau >= 0.0))
    throw ConfigError("measurement.tau must be >= 0");
  if (!std::isfinite(meas.epsilon))
    throw ConfigError("measurement.epsilon must be finite");
}

void validate(const InitialState& init) {
  if (init.kind == InitialState::Kind::gaussian) {
    if (!(init.sigma > 0.0))
      throw ConfigError("initial.sigma must be > 0");
  } else {
    if (!(init.sigma_p > 0.0))
      throw ConfigError("initial.sigma_p must be > 0");
    if (!(init.x0 > 0.0))
      throw ConfigError("initial.x0 must be > 0");
  }
}

void validate(const StrategySpec& spec) {
  validate(spec.oscillator);
  validate(spec.measurement);
  validate(spec.initial_state);
  if (!(spec.quiescent >= 0.0))
    throw ConfigError("strategy.quiescent must be >= 0");
  if (spec.n_max < 1)
    throw ConfigError("strategy.n_max must be >= 1");
  if (!(spec.rel_tol > 0.0))
    throw ConfigError("strategy.rel_tol must be > 0");
  if (spec.window < 1)
    throw ConfigError("strategy.window must be >= 1");
}

double potential(const Oscillator& osc, double x) {
  const double x2 = x * x;
  return 0.5 * osc.m * osc.omega * osc.omega * x2 + 0.25 * osc.lambda * x2 * x2;
}

double critical_time(const UnitSystem& units, const Oscillator& osc,
                     double sigma, double delta_a) {
  if (!(sigma > 0.0))
    throw ConfigError("critical_time: sigma must be > 0");
  if (!(delta_a > 0.0))
    throw ConfigError("critical_time: delta_a must be > 0");
  return osc.m /
         (units.hbar * (1.0 / (delta_a * delta_a) + 1.0 / (sigma * sigma)));
}

}  // namespace qstrobe
