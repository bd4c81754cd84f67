#pragma once

// Position-space densities |⟨x, y|ψ⟩|² of states expanded over two-mode
// number states, sampled on rectangular grids.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "su2lissajous/errors.hpp"
#include "su2lissajous/orbits.hpp"
#include "su2lissajous/oscillator.hpp"
#include "su2lissajous/su2.hpp"

namespace su2lissajous {

/// Largest quantum number the scaled recurrence is validated for.
inline constexpr int kMaxHermiteOrder = 10000;

/// Normalized oscillator eigenfunctions φ_0 … φ_{n_max} at x for frequency
/// omega_eff. Uses ψ_{n+1} = ξ√(2/(n+1)) ψ_n - √(n/(n+1)) ψ_{n-1} in ξ = √ω x,
/// seeded with π^{-1/4} and carrying the Gaussian e^{-ξ²/2} as a separate log
/// scale so neither the polynomial growth nor the Gaussian underflow is lost.
inline std::vector<double> hermite_functions(int n_max, double omega_eff, double x) {
  if (n_max < 0 || n_max > kMaxHermiteOrder)
    throw DomainError("oscillator quantum number must lie in [0, " +
                      std::to_string(kMaxHermiteOrder) + "]");
  if (!(omega_eff > 0.0)) throw DomainError("omega_eff must be > 0");

  constexpr double kRescale = 1e150;
  const double log_rescale = std::log(kRescale);
  const double xi = std::sqrt(omega_eff) * x;
  const double log_prefactor = 0.25 * std::log(omega_eff);

  std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
  double log_scale = -0.5 * xi * xi + log_prefactor;
  double prev = 0.0;
  double cur = std::pow(std::numbers::pi, -0.25);
  auto emit = [&](int n) {
    out[n] = cur == 0.0 ? 0.0 : std::copysign(std::exp(std::log(std::abs(cur)) + log_scale), cur);
  };
  emit(0);
  for (int n = 0; n < n_max; ++n) {
    const double next = xi * std::sqrt(2.0 / (n + 1)) * cur - std::sqrt(n / (n + 1.0)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescale) {
      cur /= kRescale;
      prev /= kRescale;
      log_scale += log_rescale;
    }
    emit(n + 1);
  }
  return out;
}

inline double ho_eigenfunction(int n, double omega_eff, double x) {
  return hermite_functions(n, omega_eff, x).back();
}

/// Uniform lattice of nx × ny cells; samples sit at cell centers.
struct GridSpec {
  double x_min;
  double x_max;
  int nx;
  double y_min;
  double y_max;
  int ny;

  void validate() const {
    if (!(x_min < x_max)) throw DomainError("grid requires x_min < x_max");
    if (!(y_min < y_max)) throw DomainError("grid requires y_min < y_max");
    if (nx < 1 || ny < 1) throw DomainError("grid requires nx, ny >= 1");
  }
  double dx() const noexcept { return (x_max - x_min) / nx; }
  double dy() const noexcept { return (y_max - y_min) / ny; }
  double x_at(int ix) const noexcept { return x_min + (ix + 0.5) * dx(); }
  double y_at(int iy) const noexcept { return y_min + (iy + 0.5) * dy(); }
  double cell_area() const noexcept { return dx() * dy(); }
};

/// Square grid centered at the origin with half-width h in both directions.
inline GridSpec square_grid(double half_width, int points) {
  return {-half_width, half_width, points, -half_width, half_width, points};
}

/// Half-width 1.25·max(η1, η2) over the ensemble plus 4/√(min(p, q)ω).
inline GridSpec default_grid(const LissajousEnsemble& ensemble, const OscillatorConfig& cfg,
                             int points = 512) {
  double reach = 0.0;
  for (const auto& o : ensemble.orbits) reach = std::max({reach, o.eta1, o.eta2});
  const double half = 1.25 * reach + 4.0 / std::sqrt(std::min(cfg.p(), cfg.q()) * cfg.omega());
  return square_grid(half, points);
}

/// Values are row-major with y slowest: values[iy * nx + ix].
struct DensityField {
  GridSpec grid;
  std::vector<double> values;

  double at(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * grid.nx + ix]; }
};

/// |Σ c φ^{(qω)}_{n1'}(x) φ^{(pω)}_{n2'}(y)|² at every cell center. The 1-D
/// tables are built once per column and row; each point sums components in
/// state order.
inline DensityField evaluate_density(const StateVector& state, const OscillatorConfig& cfg,
                                     const GridSpec& grid) {
  grid.validate();
  if (state.modes.size() != static_cast<std::size_t>(state.size()))
    throw DomainError("state modes and amplitudes differ in length");

  int n1_max = 0, n2_max = 0;
  for (const auto& m : state.modes) {
    n1_max = std::max(n1_max, m.n1);
    n2_max = std::max(n2_max, m.n2);
  }
  const std::size_t w1 = static_cast<std::size_t>(n1_max) + 1;
  const std::size_t w2 = static_cast<std::size_t>(n2_max) + 1;

  std::vector<double> table_x(grid.nx * w1);
  for (int ix = 0; ix < grid.nx; ++ix) {
    const auto f = hermite_functions(n1_max, cfg.freq_x(), grid.x_at(ix));
    std::copy(f.begin(), f.end(), table_x.begin() + ix * w1);
  }
  std::vector<double> table_y(grid.ny * w2);
  for (int iy = 0; iy < grid.ny; ++iy) {
    const auto f = hermite_functions(n2_max, cfg.freq_y(), grid.y_at(iy));
    std::copy(f.begin(), f.end(), table_y.begin() + iy * w2);
  }

  const std::size_t dim = state.modes.size();
  DensityField field{grid, std::vector<double>(static_cast<std::size_t>(grid.nx) * grid.ny)};
  std::vector<cplx> row_coeff(dim);
  for (int iy = 0; iy < grid.ny; ++iy) {
    const double* fy = table_y.data() + iy * w2;
    for (std::size_t k = 0; k < dim; ++k) row_coeff[k] = state.amplitudes(k) * fy[state.modes[k].n2];
    for (int ix = 0; ix < grid.nx; ++ix) {
      const double* fx = table_x.data() + ix * w1;
      cplx psi = 0.0;
      for (std::size_t k = 0; k < dim; ++k) psi += row_coeff[k] * fx[state.modes[k].n1];
      field.values[static_cast<std::size_t>(iy) * grid.nx + ix] = std::norm(psi);
    }
  }
  return field;
}

/// Midpoint-rule integral over the grid.
inline double integrate(const DensityField& field) {
  double sum = 0.0;
  for (double v : field.values) sum += v;
  return sum * field.grid.cell_area();
}

}  // namespace su2lissajous
