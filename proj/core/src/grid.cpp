#include "qstrobe/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qstrobe/csv.hpp"

namespace qstrobe {

Grid Grid::symmetric(double x_max, int n_points) {
  Grid g{-x_max, x_max, n_points};
  validate(g);
  return g;
}

void validate(const Grid& grid) {
  if (!(grid.x_max > 0.0) || grid.x_min != -grid.x_max)
    throw ConfigError("grid: domain must be symmetric, x_max = -x_min > 0");
  if (grid.n_points < 256)
    throw ConfigError("grid: n_points must be >= 256");
}

namespace {

GridState sampled_and_normalized(const Grid& grid,
                                 const std::vector<double>& values) {
  GridState state{grid, {}};
  state.amplitudes.assign(values.begin(), values.end());
  renormalize(state);
  return state;
}

}  // namespace

GridState init_gaussian(const Grid& grid, double sigma, double center) {
  validate(grid);
  if (!(sigma > 0.0))
    throw ConfigError("init_gaussian: sigma must be > 0");
  if (grid.x_max - std::abs(center) < 6.0 * sigma)
    throw ConfigError(
        "init_gaussian: grid too small for the requested width (need x_max "
        ">= |center| + 6 sigma)");
  const double prefactor =
      std::pow(1.0 / (std::numbers::pi * sigma * sigma), 0.25);
  std::vector<double> values(grid.n_points);
  for (int i = 0; i < grid.n_points; ++i) {
    const double u = (grid.x(i) - center) / sigma;
    values[i] = prefactor * std::exp(-0.5 * u * u);
  }
  return sampled_and_normalized(grid, values);
}

GridState init_gaussian(const Grid& grid, double sigma) {
  return init_gaussian(grid, sigma, 0.0);
}

GridState init_double_peak(const Grid& grid, double sigma_p, double x0) {
  validate(grid);
  if (!(sigma_p > 0.0))
    throw ConfigError("init_double_peak: sigma_p must be > 0");
  if (!(x0 > 0.0))
    throw ConfigError("init_double_peak: x0 must be > 0");
  if (grid.x_max < x0 + 6.0 * sigma_p)
    throw ConfigError(
        "init_double_peak: grid too small (need x_max >= x0 + 6 sigma_p)");
  std::vector<double> values(grid.n_points);
  for (int i = 0; i < grid.n_points; ++i) {
    const double up = (grid.x(i) - x0) / sigma_p;
    const double um = (grid.x(i) + x0) / sigma_p;
    values[i] = std::exp(-0.5 * up * up) + std::exp(-0.5 * um * um);
  }
  return sampled_and_normalized(grid, values);
}

Moments moments(const GridState& state) {
  const int n = state.grid.n_points;
  const double dx = state.grid.dx();
  double norm = 0.0, m1 = 0.0, m2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double w = (i == 0 || i == n - 1) ? 0.5 * dx : dx;
    const double p = std::norm(state.amplitudes[i]) * w;
    const double x = state.grid.x(i);
    norm += p;
    m1 += x * p;
    m2 += x * x * p;
  }
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw NumericalError("grid_state", "state norm is not positive finite");
  const double mean = m1 / norm;
  const double second = m2 / norm;
  const double var2 = std::max(2.0 * (second - mean * mean), 0.0);
  return {norm, mean, second, std::sqrt(var2)};
}

double norm2(const GridState& state) {
  const int n = state.grid.n_points;
  const double dx = state.grid.dx();
  double norm = 0.0;
  for (int i = 0; i < n; ++i) {
    const double w = (i == 0 || i == n - 1) ? 0.5 * dx : dx;
    norm += std::norm(state.amplitudes[i]) * w;
  }
  return norm;
}

void renormalize(GridState& state) {
  const double n2 = norm2(state);
  if (!(n2 > 0.0) || !std::isfinite(n2))
    throw NumericalError("grid_state",
                         "cannot renormalize a state with non-positive norm");
  const double scale = 1.0 / std::sqrt(n2);
  for (auto& a : state.amplitudes) a *= scale;
}

double edge_amplitude_ratio(const GridState& state) {
  double peak = 0.0;
  for (const auto& a : state.amplitudes) peak = std::max(peak, std::abs(a));
  if (peak == 0.0) return 0.0;
  return std::max(std::abs(state.amplitudes.front()),
                  std::abs(state.amplitudes.back())) /
         peak;
}

void write_state_csv(const std::string& path, const GridState& state) {
  CsvWriter csv(path);
  csv.header({"x", "re_psi", "im_psi", "abs2"});
  for (int i = 0; i < state.grid.n_points; ++i) {
    const auto& a = state.amplitudes[i];
    csv.row({state.grid.x(i), a.real(), a.imag(), std::norm(a)});
  }
}

}  // namespace qstrobe
