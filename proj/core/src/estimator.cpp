#include "qstrobe/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "qstrobe/csv.hpp"
#include "qstrobe/propagator.hpp"

namespace qstrobe {

namespace {

// Composite trapezoid weight for panel point j (supports uneven spacing).
double panel_weight(const std::vector<double>& eps, std::size_t j) {
  const std::size_t last = eps.size() - 1;
  if (j == 0) return 0.5 * (eps[1] - eps[0]);
  if (j == last) return 0.5 * (eps[last] - eps[last - 1]);
  return 0.5 * (eps[j + 1] - eps[j - 1]);
}

struct PanelMoments {
  double mass;
  double mean;
  double variance;
};

PanelMoments panel_moments(const ReadoutDistribution& dist) {
  double mass = 0.0, mean = 0.0, second = 0.0;
  for (std::size_t j = 0; j < dist.epsilons.size(); ++j) {
    const double w = dist.weights[j] * panel_weight(dist.epsilons, j);
    mass += w;
    mean += w * dist.epsilons[j];
    second += w * dist.epsilons[j] * dist.epsilons[j];
  }
  if (!(mass > 0.0))
    throw NumericalError("estimator",
                         "readout distribution has non-positive mass");
  mean /= mass;
  second /= mass;
  return {mass, mean, std::max(second - mean * mean, 0.0)};
}

}  // namespace

GridState impulsive_collapse(const GridState& state, double delta_a,
                             double epsilon) {
  if (!(delta_a > 0.0))
    throw ConfigError("impulsive_collapse: delta_a must be > 0");
  GridState collapsed = state;
  const double inv = 1.0 / (2.0 * delta_a * delta_a);
  for (int i = 0; i < collapsed.grid.n_points; ++i) {
    const double xe = collapsed.grid.x(i) - epsilon;
    collapsed.amplitudes[i] *= std::exp(-xe * xe * inv);
  }
  renormalize(collapsed);
  return collapsed;
}

std::vector<double> default_readout_panel(const GridState& state,
                                          double delta_a, int n_points,
                                          double n_std) {
  if (!(delta_a > 0.0))
    throw ConfigError("default_readout_panel: delta_a must be > 0");
  if (n_points < 41)
    throw ConfigError("default_readout_panel: n_points must be >= 41");
  if (!(n_std >= 5.0))
    throw ConfigError("default_readout_panel: n_std must be >= 5");
  const Moments m = moments(state);
  // The readout distribution is roughly the position density blurred by the
  // instrument resolution, so its scale is the quadrature sum of the two.
  const double spread = std::sqrt(m.width * m.width + delta_a * delta_a);
  std::vector<double> panel(n_points);
  const double step = 2.0 * n_std * spread / (n_points - 1);
  for (int i = 0; i < n_points; ++i)
    panel[i] = m.mean - n_std * spread + i * step;
  return panel;
}

ReadoutDistribution readout_distribution(const GridState& state,
                                         const UnitSystem& units,
                                         const Oscillator& osc,
                                         const MeasurementSpec& meas,
                                         const std::vector<double>& epsilons,
                                         const EvolutionParams& params) {
  validate(meas);
  if (epsilons.size() < 2)
    throw ConfigError("readout_distribution: need at least two panel points");
  for (std::size_t i = 1; i < epsilons.size(); ++i)
    if (!(epsilons[i] > epsilons[i - 1]))
      throw ConfigError(
          "readout_distribution: panel points must be strictly increasing");

  ReadoutDistribution dist;
  dist.epsilons = epsilons;
  dist.weights.resize(epsilons.size());

  if (meas.tau == 0.0) {
    // Instantaneous readout: weight(ε) = ∫ |ψ(x)|² e^{−(x−ε)²/Δa²} dx,
    // the squared norm the collapse factor would leave behind.
    const auto& grid = state.grid;
    const double dx = grid.dx();
    const double inv = 1.0 / (meas.delta_a * meas.delta_a);
    std::vector<double> density(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i)
      density[i] = std::norm(state.amplitudes[i]);
    for (std::size_t j = 0; j < epsilons.size(); ++j) {
      double acc = 0.0;
      for (int i = 0; i < grid.n_points; ++i) {
        const double xe = grid.x(i) - epsilons[j];
        const double term = density[i] * std::exp(-xe * xe * inv);
        acc += (i == 0 || i == grid.n_points - 1) ? 0.5 * term : term;
      }
      dist.weights[j] = acc * dx;
    }
  } else {
    // Finite-duration readout: weight(ε) is the surviving squared norm after
    // evolving with the damped propagator focused at ε.
    for (std::size_t j = 0; j < epsilons.size(); ++j) {
      GridState survived =
          evolve_measured(state, units, osc, meas, epsilons[j], meas.tau,
                          params);
      dist.weights[j] = norm2(survived);
    }
  }

  double total = 0.0;
  const std::size_t last = epsilons.size() - 1;
  for (std::size_t j = 0; j <= last; ++j)
    total += dist.weights[j] * panel_weight(epsilons, j);
  dist.normalization = total;
  if (!(total > 0.0))
    throw NumericalError("estimator",
                         "readout distribution has non-positive mass");

  const double d_first = epsilons[1] - epsilons[0];
  const double d_last = epsilons[last] - epsilons[last - 1];
  const double tail =
      (dist.weights[0] * d_first + dist.weights[last] * d_last) / total;
  if (tail > 1e-6)
    throw NumericalError(
        "estimator",
        "readout panel truncates the distribution (tail fraction " +
            std::to_string(tail) + "); widen the panel");
  return dist;
}

double effective_uncertainty_numeric(const ReadoutDistribution& dist) {
  if (dist.epsilons.size() < 2)
    throw ConfigError(
        "effective_uncertainty_numeric: need at least two panel points");
  const PanelMoments m = panel_moments(dist);
  return std::sqrt(2.0 * m.variance);
}

double gaussian_fit_residual(const ReadoutDistribution& dist) {
  const std::size_t n = dist.epsilons.size();
  if (n < 3)
    throw ConfigError("gaussian_fit_residual: need at least three points");
  const PanelMoments m = panel_moments(dist);
  const double width =
      std::sqrt(std::max(2.0 * m.variance, 1e-300));  // e^{−ε²/width²} scale
  double peak = 0.0;
  for (double w : dist.weights) peak = std::max(peak, w);
  if (!(peak > 0.0))
    throw NumericalError("estimator", "readout distribution is empty");
  double residual = 0.0;
  const double amplitude = m.mass / (std::sqrt(std::numbers::pi) * width);
  for (std::size_t j = 0; j < n; ++j) {
    const double eps = dist.epsilons[j] - m.mean;
    const double model = amplitude * std::exp(-eps * eps / (width * width));
    residual = std::max(residual, std::abs(dist.weights[j] - model));
  }
  return residual / peak;
}

void write_distribution_csv(const std::string& path,
                            const ReadoutDistribution& dist) {
  CsvWriter csv(path);
  csv.header({"epsilon", "weight"});
  for (std::size_t j = 0; j < dist.epsilons.size(); ++j)
    csv.row({dist.epsilons[j], dist.weights[j]});
}

}  // namespace qstrobe
