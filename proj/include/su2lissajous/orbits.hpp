#pragma once

// Classical side: Lissajous orbits x = η1 cos(qωt - φ1), y = η2 cos(pωt - φ2),
// the phase variables z1, z2, the untwisting map z -> z̃, stereographic
// projection, and the orbit ensemble attached to an SU(2) coherent state.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "su2lissajous/errors.hpp"
#include "su2lissajous/oscillator.hpp"
#include "su2lissajous/su2.hpp"

namespace su2lissajous {

struct Point2 {
  double x;
  double y;
};

struct LissajousOrbit {
  double eta1;
  double eta2;
  double phi1;
  double phi2;
  OscillatorConfig cfg;
};

struct LissajousEnsemble {
  std::vector<LissajousOrbit> orbits;
  std::vector<int> k_labels;

  std::size_t size() const noexcept { return orbits.size(); }
};

/// Phase-space point in original (z1, z2) and untwisted (z̃1, z̃2) variables.
struct PhasePoint {
  cplx z1;
  cplx z2;
  cplx ztilde1;
  cplx ztilde2;
};

/// Wraps an angle into (-π, π].
inline double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  a = std::remainder(a, two_pi);
  if (a <= -std::numbers::pi) a += two_pi;
  return a;
}

inline Point2 orbit_position(const LissajousOrbit& orbit, double t) {
  return {orbit.eta1 * std::cos(orbit.cfg.freq_x() * t - orbit.phi1),
          orbit.eta2 * std::cos(orbit.cfg.freq_y() * t - orbit.phi2)};
}

/// z1 = √(ωq/2) η1 e^{-i(ωqt - φ1)}, z2 = √(ωp/2) η2 e^{-i(ωpt - φ2)}.
inline std::pair<cplx, cplx> classical_phase(const LissajousOrbit& orbit, double t) {
  const double wx = orbit.cfg.freq_x();
  const double wy = orbit.cfg.freq_y();
  return {std::polar(std::sqrt(0.5 * wx) * orbit.eta1, -(wx * t - orbit.phi1)),
          std::polar(std::sqrt(0.5 * wy) * orbit.eta2, -(wy * t - orbit.phi2))};
}

/// z̃ = k^{-1/2} (z/|z|)^k |z|.
inline cplx untwist(cplx z, int k) {
  const double r = std::abs(z);
  if (r == 0.0) throw DegenerateOrbitError("untwisting map has no phase at z = 0 (line orbit)");
  return std::polar(r / std::sqrt(static_cast<double>(k)), k * std::arg(z));
}

inline PhasePoint phase_trajectory(const LissajousOrbit& orbit, double t) {
  const auto [z1, z2] = classical_phase(orbit, t);
  return {z1, z2, untwist(z1, orbit.cfg.p()), untwist(z2, orbit.cfg.q())};
}

/// ω²(q²η1² + p²η2²)/2.
inline double classical_energy(const LissajousOrbit& orbit) {
  const double wx = orbit.cfg.freq_x();
  const double wy = orbit.cfg.freq_y();
  return 0.5 * (wx * wx * orbit.eta1 * orbit.eta1 + wy * wy * orbit.eta2 * orbit.eta2);
}

enum class ProjectionPole { North, South };

/// Stereographic projection of a point on the radius-j sphere.
/// North: Z = 2j (jx + i jy)/(j - jz), singular at jz = j.
/// South: Z = 2j (jx + i jy)/(j + jz), singular at jz = -j. For the sphere
/// point of a coherent state this chart gives 2j/τ, which is the value the
/// untwisted orbit produces through 2j z̃2/z̃1.
inline cplx stereographic(double jx, double jy, double jz, double j,
                          ProjectionPole pole = ProjectionPole::North) {
  if (!(j > 0.0)) throw DomainError("sphere radius j must be > 0");
  const double r2 = jx * jx + jy * jy + jz * jz;
  if (std::abs(r2 - j * j) > 1e-8 * j * j)
    throw DomainError("point does not lie on the sphere of radius j");
  if (pole == ProjectionPole::North) {
    const double denom = j - jz;
    if (denom <= 1e-14 * j) throw PointAtInfinityError("north pole maps to the point at infinity");
    return 2.0 * j * cplx(jx, jy) / denom;
  }
  const double denom = j + jz;
  if (denom <= 1e-14 * j) throw PointAtInfinityError("south pole maps to the point at infinity");
  return 2.0 * j * cplx(jx, jy) / denom;
}

/// Z = 2j z̃2 / z̃1 along the orbit at time t.
inline cplx projective_coordinate(const LissajousOrbit& orbit, double j, double t) {
  const PhasePoint pt = phase_trajectory(orbit, t);
  return 2.0 * j * pt.ztilde2 / pt.ztilde1;
}

/// Sphere point (j sinθ cosφ, -j sinθ sinφ, -j cosθ) targeted by ⟨J⟩.
inline JVector classical_limit_map(const SU2CoherentSpec& spec) {
  const double j = spec.j();
  return {j * std::sin(spec.theta) * std::cos(spec.phi),
          -j * std::sin(spec.theta) * std::sin(spec.phi), -j * std::cos(spec.theta)};
}

/// The M = gcd(p, q) orbits matched to |j, τ⟩: amplitudes fixed by
/// qη1/(pη2) = |τ| and the energy ωpq(N+1); phases φ2 = 0 and
/// φ1 = (φ + 2πk)/p for k = 0 … M-1.
inline LissajousEnsemble orbits_from_coherent(const SU2CoherentSpec& spec,
                                              const OscillatorConfig& cfg) {
  spec.validate();
  const double p = cfg.p();
  const double q = cfg.q();
  const double w = cfg.omega();
  const double n_plus_1 = spec.N + 1.0;

  // |τ|/√(1+|τ|²) = sin(θ/2), 1/√(1+|τ|²) = cos(θ/2)
  const bool south = spec.theta == 0.0;
  const bool north = spec.theta >= std::numbers::pi;
  const double s = south ? 0.0 : (north ? 1.0 : std::sin(0.5 * spec.theta));
  const double c = north ? 0.0 : (south ? 1.0 : std::cos(0.5 * spec.theta));
  const double eta1 = std::sqrt(2.0 * p * n_plus_1 / (q * w)) * s;
  const double eta2 = std::sqrt(2.0 * q * n_plus_1 / (p * w)) * c;
  const double phase = (south || north) ? 0.0 : spec.phi;

  LissajousEnsemble ens;
  const int M = cfg.common_factor();
  for (int k = 0; k < M; ++k) {
    ens.orbits.push_back({eta1, eta2, (phase + 2.0 * std::numbers::pi * k) / p, 0.0, cfg});
    ens.k_labels.push_back(k);
  }
  return ens;
}

/// n points at t_i = i·T/n over one period T = 2π/ω.
inline std::vector<Point2> sample_orbit(const LissajousOrbit& orbit, int n_samples) {
  if (n_samples < 1) throw DomainError("n_samples must be >= 1");
  std::vector<Point2> pts;
  pts.reserve(static_cast<std::size_t>(n_samples));
  const double dt = orbit.cfg.period() / n_samples;
  for (int i = 0; i < n_samples; ++i) pts.push_back(orbit_position(orbit, i * dt));
  return pts;
}

namespace detail {

/// Distance from `pt` to the curve of `orbit`, starting from parameter t0 and
/// refining with a bracketed Newton iteration on |C(t) - pt|².
inline double refine_distance(const LissajousOrbit& orbit, Point2 pt, double t0, double dt) {
  const double wx = orbit.cfg.freq_x();
  const double wy = orbit.cfg.freq_y();
  auto dist2 = [&](double t) {
    const Point2 c = orbit_position(orbit, t);
    return (c.x - pt.x) * (c.x - pt.x) + (c.y - pt.y) * (c.y - pt.y);
  };
  double t = t0;
  double best = dist2(t0);
  for (int it = 0; it < 40; ++it) {
    const double ax = wx * t - orbit.phi1;
    const double ay = wy * t - orbit.phi2;
    const double cx = orbit.eta1 * std::cos(ax) - pt.x;
    const double cy = orbit.eta2 * std::cos(ay) - pt.y;
    const double dx = -orbit.eta1 * wx * std::sin(ax);
    const double dy = -orbit.eta2 * wy * std::sin(ay);
    const double ddx = -orbit.eta1 * wx * wx * std::cos(ax);
    const double ddy = -orbit.eta2 * wy * wy * std::cos(ay);
    const double g = cx * dx + cy * dy;
    const double h = dx * dx + dy * dy + cx * ddx + cy * ddy;
    double step = h > 0.0 ? -g / h : (g > 0.0 ? -dt : dt);
    step = std::clamp(step, -dt, dt);
    t += step;
    best = std::min(best, dist2(t));
    if (std::abs(step) < 1e-15 * orbit.cfg.period()) break;
  }
  return std::sqrt(best);
}

/// Uniform bucket grid over a point sample for nearest-sample queries.
class SampleIndex {
 public:
  explicit SampleIndex(const std::vector<Point2>& pts) : pts_(pts) {
    x0_ = y0_ = std::numeric_limits<double>::infinity();
    double x1 = -x0_, y1 = -y0_, spacing = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      x0_ = std::min(x0_, pts[i].x);
      y0_ = std::min(y0_, pts[i].y);
      x1 = std::max(x1, pts[i].x);
      y1 = std::max(y1, pts[i].y);
      const Point2& nxt = pts[(i + 1) % pts.size()];
      spacing = std::max(spacing, std::hypot(nxt.x - pts[i].x, nxt.y - pts[i].y));
    }
    const double extent = std::max({x1 - x0_, y1 - y0_, 1e-300});
    spacing_ = spacing;
    cell_ = std::max(spacing, extent / 512.0);
    if (cell_ <= 0.0) cell_ = 1.0;
    nx_ = static_cast<int>((x1 - x0_) / cell_) + 1;
    ny_ = static_cast<int>((y1 - y0_) / cell_) + 1;
    buckets_.resize(static_cast<std::size_t>(nx_) * ny_);
    for (std::size_t i = 0; i < pts.size(); ++i)
      buckets_[index(cell_x(pts[i].x), cell_y(pts[i].y))].push_back(i);
  }

  double spacing() const noexcept { return spacing_; }

  /// Indices of all samples within `radius` of q.
  std::vector<std::size_t> within(Point2 q, double radius) const {
    std::vector<std::size_t> out;
    const int x_lo = std::max(0, cell_x(q.x - radius)), x_hi = std::min(nx_ - 1, cell_x(q.x + radius));
    const int y_lo = std::max(0, cell_y(q.y - radius)), y_hi = std::min(ny_ - 1, cell_y(q.y + radius));
    const double r2 = radius * radius;
    for (int iy = y_lo; iy <= y_hi; ++iy)
      for (int ix = x_lo; ix <= x_hi; ++ix)
        for (std::size_t i : buckets_[index(ix, iy)]) {
          const double dx = pts_[i].x - q.x;
          const double dy = pts_[i].y - q.y;
          if (dx * dx + dy * dy <= r2) out.push_back(i);
        }
    return out;
  }

  std::size_t nearest(Point2 q) const {
    const int cx = cell_x(q.x);
    const int cy = cell_y(q.y);
    const int r_max = std::max({std::abs(cx) + nx_, std::abs(cy) + ny_});
    std::size_t best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (int r = 0; r <= r_max; ++r) {
      for (int iy = cy - r; iy <= cy + r; ++iy) {
        if (iy < 0 || iy >= ny_) continue;
        const bool edge_row = iy == cy - r || iy == cy + r;
        for (int ix = cx - r; ix <= cx + r; ix += edge_row ? 1 : 2 * r) {
          if (ix >= 0 && ix < nx_)
            for (std::size_t i : buckets_[index(ix, iy)]) {
              const double dx = pts_[i].x - q.x;
              const double dy = pts_[i].y - q.y;
              const double d2 = dx * dx + dy * dy;
              if (d2 < best_d2) {
                best_d2 = d2;
                best = i;
              }
            }
          if (r == 0) break;
        }
      }
      // anything in ring r + 1 or beyond is at least r cells away
      if (best_d2 <= (r * cell_) * (r * cell_)) break;
    }
    return best;
  }

 private:
  int cell_x(double x) const { return static_cast<int>(std::floor((x - x0_) / cell_)); }
  int cell_y(double y) const { return static_cast<int>(std::floor((y - y0_) / cell_)); }
  std::size_t index(int ix, int iy) const {
    ix = std::clamp(ix, 0, nx_ - 1);
    iy = std::clamp(iy, 0, ny_ - 1);
    return static_cast<std::size_t>(iy) * nx_ + ix;
  }

  const std::vector<Point2>& pts_;
  double x0_, y0_, cell_, spacing_;
  int nx_, ny_;
  std::vector<std::vector<std::size_t>> buckets_;
};

inline double directed_hausdorff(const std::vector<Point2>& from, const LissajousOrbit& to,
                                 const std::vector<Point2>& to_samples, double stop_above) {
  const std::size_t n = to_samples.size();
  const double dt = to.cfg.period() / static_cast<double>(n);
  const SampleIndex index(to_samples);
  auto d2 = [&](std::size_t i, Point2 pt) {
    const double dx = to_samples[i].x - pt.x;
    const double dy = to_samples[i].y - pt.y;
    return dx * dx + dy * dy;
  };
  double worst = 0.0;
  for (const Point2& pt : from) {
    // near a self-crossing the closest sample can sit on the wrong branch, so
    // every local minimum of the sample distance within one spacing of the
    // nearest sample is refined
    const std::size_t nearest = index.nearest(pt);
    const double radius = std::sqrt(d2(nearest, pt)) + index.spacing();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i : index.within(pt, radius)) {
      const double di = d2(i, pt);
      if (d2((i + 1) % n, pt) < di || d2((i + n - 1) % n, pt) < di) continue;
      best = std::min(best, refine_distance(to, pt, static_cast<double>(i) * dt, dt));
      if (best < worst) break;
    }
    if (!std::isfinite(best)) best = refine_distance(to, pt, static_cast<double>(nearest) * dt, dt);
    worst = std::max(worst, best);
    if (worst > stop_above) break;
  }
  return worst;
}

}  // namespace detail

/// Symmetric Hausdorff distance between two orbits sampled at n points each,
/// with every sample projected onto the other curve (not just its samples),
/// so coinciding curves give round-off sized distances. Evaluation stops
/// early once the distance is known to exceed `stop_above`.
inline double curve_hausdorff(const LissajousOrbit& a, const LissajousOrbit& b,
                              int n_samples = 4096,
                              double stop_above = std::numeric_limits<double>::infinity()) {
  const auto sa = sample_orbit(a, n_samples);
  const auto sb = sample_orbit(b, n_samples);
  const double ab = detail::directed_hausdorff(sa, b, sb, stop_above);
  if (ab > stop_above) return ab;
  return std::max(ab, detail::directed_hausdorff(sb, a, sa, stop_above));
}

/// Orbits coincide as point sets (reparametrization and time reversal included)
/// when their Hausdorff distance is below 1e-9·max(η1, η2).
inline bool same_curve(const LissajousOrbit& a, const LissajousOrbit& b, int n_samples = 4096) {
  const double scale = std::max({a.eta1, a.eta2, b.eta1, b.eta2});
  if (scale == 0.0) return true;
  const double tol = 1e-9 * scale;
  return curve_hausdorff(a, b, n_samples, tol) < tol;
}

}  // namespace su2lissajous
