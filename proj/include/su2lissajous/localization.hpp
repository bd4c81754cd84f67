#pragma once

// Probability mass of a quantum density inside tubes around classical orbits.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "su2lissajous/errors.hpp"
#include "su2lissajous/orbits.hpp"
#include "su2lissajous/oscillator.hpp"
#include "su2lissajous/su2.hpp"
#include "su2lissajous/wavefield.hpp"

namespace su2lissajous {

inline constexpr int kDefaultOrbitSamples = 4096;

struct TubeReport {
  double epsilon = 0.0;
  /// Midpoint-rule mass of the whole grid.
  double total_mass = 0.0;
  /// Mass within ε of each orbit, in ensemble order.
  std::vector<double> per_orbit_mass;
  /// Mass within ε of at least one orbit.
  double union_mass = 0.0;
  int n_samples = 0;
  /// Set when the grid does not cover the ensemble bounding box grown by ε.
  std::optional<std::string> coverage_warning;
};

namespace detail {

inline double segment_distance2(Point2 a, Point2 b, double px, double py) {
  const double ex = b.x - a.x, ey = b.y - a.y;
  const double len2 = ex * ex + ey * ey;
  double s = 0.0;
  if (len2 > 0.0) s = std::clamp(((px - a.x) * ex + (py - a.y) * ey) / len2, 0.0, 1.0);
  const double dx = a.x + s * ex - px, dy = a.y + s * ey - py;
  return dx * dx + dy * dy;
}

/// Marks every cell whose center is within ε of the closed polyline.
inline void mark_tube(const GridSpec& grid, const std::vector<Point2>& poly, double eps,
                      std::vector<char>& mask) {
  const double dx = grid.dx(), dy = grid.dy(), eps2 = eps * eps;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = poly[i];
    const Point2 b = poly[(i + 1) % n];
    const double lo_x = std::min(a.x, b.x) - eps, hi_x = std::max(a.x, b.x) + eps;
    const double lo_y = std::min(a.y, b.y) - eps, hi_y = std::max(a.y, b.y) + eps;
    const int ix0 = std::max(0, static_cast<int>(std::ceil((lo_x - grid.x_min) / dx - 0.5)));
    const int ix1 = std::min(grid.nx - 1, static_cast<int>(std::floor((hi_x - grid.x_min) / dx - 0.5)));
    const int iy0 = std::max(0, static_cast<int>(std::ceil((lo_y - grid.y_min) / dy - 0.5)));
    const int iy1 = std::min(grid.ny - 1, static_cast<int>(std::floor((hi_y - grid.y_min) / dy - 0.5)));
    for (int iy = iy0; iy <= iy1; ++iy) {
      const double py = grid.y_at(iy);
      for (int ix = ix0; ix <= ix1; ++ix) {
        char& m = mask[static_cast<std::size_t>(iy) * grid.nx + ix];
        if (!m && segment_distance2(a, b, grid.x_at(ix), py) <= eps2) m = 1;
      }
    }
  }
}

inline double masked_mass(const DensityField& field, const std::vector<char>& mask) {
  double sum = 0.0;
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) sum += field.values[i];
  return sum * field.grid.cell_area();
}

}  // namespace detail

/// Tube masses of `field` around each orbit of the ensemble. Each orbit is a
/// closed polyline through n_samples points t_i = i·T/n_samples; a cell
/// belongs to a tube when its center lies within ε of that polyline.
inline TubeReport tube_mass(const DensityField& field, const LissajousEnsemble& ensemble,
                            double epsilon, int n_samples = kDefaultOrbitSamples) {
  if (!(epsilon > 0.0)) throw DomainError("tube radius epsilon must be > 0");
  if (n_samples < 1024) throw DomainError("n_samples must be >= 1024");
  const GridSpec& grid = field.grid;
  grid.validate();

  TubeReport report;
  report.epsilon = epsilon;
  report.n_samples = n_samples;
  report.total_mass = integrate(field);

  const std::size_t cells = field.values.size();
  std::vector<char> union_mask(cells, 0);
  double reach_x = 0.0, reach_y = 0.0;
  for (const auto& orbit : ensemble.orbits) {
    reach_x = std::max(reach_x, orbit.eta1);
    reach_y = std::max(reach_y, orbit.eta2);
    std::vector<char> mask(cells, 0);
    detail::mark_tube(grid, sample_orbit(orbit, n_samples), epsilon, mask);
    report.per_orbit_mass.push_back(detail::masked_mass(field, mask));
    for (std::size_t i = 0; i < cells; ++i) union_mask[i] |= mask[i];
  }
  report.union_mass = detail::masked_mass(field, union_mask);

  if (grid.x_min > -reach_x - epsilon || grid.x_max < reach_x + epsilon ||
      grid.y_min > -reach_y - epsilon || grid.y_max < reach_y + epsilon)
    report.coverage_warning = "grid does not cover the orbit ensemble bounding box plus epsilon";
  return report;
}

/// Tube radius as a function of the configuration and N.
using EpsilonRule = std::function<double(const OscillatorConfig&, int)>;

/// σ̄ = (1/√(2qω) + 1/√(2pω))/2, the mean ground-state width of the two modes.
inline double mean_ground_width(const OscillatorConfig& cfg) {
  return 0.5 * (1.0 / std::sqrt(2.0 * cfg.freq_x()) + 1.0 / std::sqrt(2.0 * cfg.freq_y()));
}

/// ε = c·σ̄, independent of N.
inline EpsilonRule fixed_width_rule(double c = 3.0) {
  return [c](const OscillatorConfig& cfg, int) { return c * mean_ground_width(cfg); };
}

struct ScanOptions {
  int grid_points = 512;
  int n_samples = kDefaultOrbitSamples;
};

struct ScanEntry {
  int N;
  TubeReport report;
};

/// One tube report per N: coherent state, density on the default grid, orbit
/// ensemble and tube masses.
inline std::vector<ScanEntry> localization_scan(const SU2CoherentSpec& spec_template,
                                                const OscillatorConfig& cfg,
                                                const std::vector<int>& N_list,
                                                const EpsilonRule& epsilon_rule = fixed_width_rule(),
                                                const ScanOptions& options = {}) {
  if (!std::is_sorted(N_list.begin(), N_list.end()))
    throw DomainError("N_list must be ascending");
  std::vector<ScanEntry> out;
  out.reserve(N_list.size());
  for (int N : N_list) {
    SU2CoherentSpec spec = spec_template;
    spec.N = N;
    const SubspaceBasis basis = enumerate_subspace(cfg, spec.lambda1, spec.lambda2, N);
    const StateVector state = build_su2_coherent(spec, basis);
    const LissajousEnsemble ensemble = orbits_from_coherent(spec, cfg);
    const DensityField field =
        evaluate_density(state, cfg, default_grid(ensemble, cfg, options.grid_points));
    out.push_back({N, tube_mass(field, ensemble, epsilon_rule(cfg, N), options.n_samples)});
  }
  return out;
}

/// Lissajous orbit attached to |α1, α2⟩: η1 = |α1|√(2/(qω)), φ1 = arg α1,
/// η2 = |α2|√(2/(pω)), φ2 = arg α2.
inline LissajousOrbit orbit_from_glauber(cplx alpha1, cplx alpha2, const OscillatorConfig& cfg) {
  return {std::abs(alpha1) * std::sqrt(2.0 / cfg.freq_x()),
          std::abs(alpha2) * std::sqrt(2.0 / cfg.freq_y()), std::arg(alpha1), std::arg(alpha2),
          cfg};
}

/// max_t max(|⟨a1(t)⟩ - z1(t)|, |⟨a2(t)⟩ - z2(t)|) between the Heisenberg
/// evolution of the Glauber state and the classical orbit built from it.
inline double glauber_trajectory_check(cplx alpha1, cplx alpha2, const OscillatorConfig& cfg,
                                       const std::vector<double>& t_samples) {
  const LissajousOrbit orbit = orbit_from_glauber(alpha1, alpha2, cfg);
  double worst = 0.0;
  for (double t : t_samples) {
    const auto [a1, a2] = evolve_expectations(alpha1, alpha2, cfg, t);
    const auto [z1, z2] = classical_phase(orbit, t);
    worst = std::max({worst, std::abs(a1 - z1), std::abs(a2 - z2)});
  }
  return worst;
}

}  // namespace su2lissajous
