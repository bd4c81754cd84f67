#pragma once

// Schwinger SU(2) realization on a degenerate eigenspace, SU(2) coherent
// states, and truncated two-mode Glauber states.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "su2lissajous/errors.hpp"
#include "su2lissajous/oscillator.hpp"

namespace su2lissajous {

using cplx = std::complex<double>;

namespace detail {

/// n·log(a) with the convention 0·log(0) = 0.
inline double n_log(int n, double log_a) { return n == 0 ? 0.0 : n * log_a; }

inline double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace detail

/// Amplitudes over an explicit list of two-mode number states.
struct StateVector {
  std::vector<FockState> modes;
  Eigen::VectorXcd amplitudes;
  /// Present when every component lies in one degenerate eigenspace, in
  /// which case modes == subspace->states.
  std::optional<SubspaceBasis> subspace;

  double norm() const { return amplitudes.norm(); }
  Eigen::Index size() const { return amplitudes.size(); }
};

struct SU2Generators {
  int two_j = 0;
  Eigen::MatrixXcd jp;
  Eigen::MatrixXcd jm;
  Eigen::MatrixXcd jz;
  Eigen::MatrixXcd jx;
  Eigen::MatrixXcd jy;
  double j0_eigenvalue = 0.0;

  double j() const noexcept { return 0.5 * two_j; }
};

/// Sphere-parametrized SU(2) coherent state |j, τ⟩ with τ = tan(θ/2) e^{iφ}
/// over the (λ1, λ2) family, N = 2j.
struct SU2CoherentSpec {
  int N = 0;
  double theta = 0.0;
  double phi = 0.0;
  int lambda1 = 0;
  int lambda2 = 0;

  double j() const noexcept { return 0.5 * N; }

  /// Empty at the pole θ = π.
  std::optional<cplx> tau() const {
    if (theta >= std::numbers::pi) return std::nullopt;
    return std::polar(std::tan(0.5 * theta), phi);
  }

  void validate() const {
    if (N < 0) throw DomainError("N must be >= 0");
    if (!(theta >= 0.0 && theta <= std::numbers::pi))
      throw DomainError("theta must lie in [0, pi]");
    if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi))
      throw DomainError("phi must lie in [0, 2pi)");
  }
};

/// Spec whose τ equals the given finite value, φ reduced to [0, 2π).
inline SU2CoherentSpec spec_from_tau(cplx tau, int N, int lambda1 = 0, int lambda2 = 0) {
  double phi = std::arg(tau);
  if (phi < 0.0) phi += 2.0 * std::numbers::pi;
  if (phi >= 2.0 * std::numbers::pi) phi = 0.0;
  return {N, 2.0 * std::atan(std::abs(tau)), phi, lambda1, lambda2};
}

/// J± = ã1†ã2, ã1ã2†, Jz = (ñ1 - ñ2)/2 built from the transformed ladder
/// action ã1†|n1 p + λ1, ·⟩ = √(n1+1)|(n1+1)p + λ1, ·⟩ and
/// ã2|·, n2 q + λ2⟩ = √n2 |·, (n2-1)q + λ2⟩. Only (n1, n2) enter, so the
/// matrices are the same for every (p, q, λ1, λ2).
inline SU2Generators build_generators(const SubspaceBasis& basis) {
  const int dim = basis.dimension();
  const int N = basis.two_j;
  SU2Generators g;
  g.two_j = N;
  g.jp = Eigen::MatrixXcd::Zero(dim, dim);
  g.jz = Eigen::MatrixXcd::Zero(dim, dim);
  for (int col = 0; col < dim; ++col) {
    const int n1 = col;
    const int n2 = N - col;
    g.jz(col, col) = 0.5 * (n1 - n2);
    if (n2 > 0) g.jp(col + 1, col) = std::sqrt(static_cast<double>(n1 + 1)) * std::sqrt(n2);
  }
  g.jm = g.jp.adjoint();
  g.jx = 0.5 * (g.jp + g.jm);
  g.jy = cplx(0.0, -0.5) * (g.jp - g.jm);
  g.j0_eigenvalue = 0.5 * N;
  return g;
}

/// Amplitude at index n1 = j + m is √C(2j, n1) sin^{n1}(θ/2) cos^{2j-n1}(θ/2) e^{i n1 φ},
/// which is binom^{1/2} τ^{j+m} / (1 + |τ|²)^j written without τ, so θ = π is regular.
inline StateVector build_su2_coherent(const SU2CoherentSpec& spec, const SubspaceBasis& basis) {
  spec.validate();
  if (basis.two_j != spec.N)
    throw DomainError("basis has 2j = " + std::to_string(basis.two_j) + " but spec has N = " +
                      std::to_string(spec.N));
  if (basis.lambda1 != spec.lambda1 || basis.lambda2 != spec.lambda2)
    throw DomainError("basis (lambda1, lambda2) does not match the coherent-state spec");

  const int N = spec.N;
  const double log_s = std::log(std::sin(0.5 * spec.theta));
  const double log_c = spec.theta >= std::numbers::pi
                           ? -std::numeric_limits<double>::infinity()
                           : std::log(std::cos(0.5 * spec.theta));

  StateVector state;
  state.modes = basis.states;
  state.subspace = basis;
  state.amplitudes.resize(N + 1);
  for (int k = 0; k <= N; ++k) {
    const double log_mag =
        0.5 * detail::log_binomial(N, k) + detail::n_log(k, log_s) + detail::n_log(N - k, log_c);
    state.amplitudes(k) = std::polar(std::exp(log_mag), k * spec.phi);
  }
  return state;
}

/// Point (jx, jy, jz); for coherent states it lies on the sphere of radius j.
struct JVector {
  double x;
  double y;
  double z;
};

namespace detail {

/// ⟨ψ|A|ψ⟩ summed in ascending row then column order.
inline cplx expectation(const Eigen::VectorXcd& psi, const Eigen::MatrixXcd& a) {
  cplx acc = 0.0;
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    cplx row = 0.0;
    for (Eigen::Index c = 0; c < a.cols(); ++c) row += a(r, c) * psi(c);
    acc += std::conj(psi(r)) * row;
  }
  return acc;
}

}  // namespace detail

inline JVector j_expectations(const StateVector& state, const SU2Generators& gens) {
  if (state.size() != gens.jz.rows())
    throw DomainError("state dimension " + std::to_string(state.size()) +
                      " does not match generator dimension " + std::to_string(gens.jz.rows()));
  return {detail::expectation(state.amplitudes, gens.jx).real(),
          detail::expectation(state.amplitudes, gens.jy).real(),
          detail::expectation(state.amplitudes, gens.jz).real()};
}

/// Smallest cutoff c with Σ_{n>c} e^{-μ} μ^n / n! < tail_tolerance, by direct
/// summation of the tail from the top.
inline int poisson_cutoff(double mean, double tail_tolerance) {
  if (!(tail_tolerance > 0.0 && tail_tolerance < 1.0))
    throw DomainError("tail_tolerance must lie in (0, 1)");
  if (mean == 0.0) return 0;
  const double log_mean = std::log(mean);
  auto log_pmf = [&](int n) { return -mean + n * log_mean - std::lgamma(n + 1.0); };

  int top = static_cast<int>(std::ceil(mean)) + 1;
  while (std::exp(log_pmf(top)) > 1e-6 * tail_tolerance)
    top += 8;

  double tail = 0.0;  // Σ_{n > c} pmf(n)
  int cutoff = top;
  for (int c = top - 1; c >= 0; --c) {
    tail += std::exp(log_pmf(c + 1));
    if (tail >= tail_tolerance) break;
    cutoff = c;
  }
  return cutoff;
}

/// Truncated |α1, α2⟩ over n1 ∈ [0, c1], n2 ∈ [0, c2], ordered n1-major.
inline StateVector build_glauber(cplx alpha1, cplx alpha2, double tail_tolerance) {
  const int c1 = poisson_cutoff(std::norm(alpha1), tail_tolerance);
  const int c2 = poisson_cutoff(std::norm(alpha2), tail_tolerance);

  auto mode_amplitudes = [](cplx alpha, int cutoff) {
    std::vector<cplx> a(static_cast<std::size_t>(cutoff) + 1);
    const double log_abs = std::log(std::abs(alpha));
    for (int n = 0; n <= cutoff; ++n) {
      const double log_mag = -0.5 * std::norm(alpha) + detail::n_log(n, log_abs) -
                             0.5 * std::lgamma(n + 1.0);
      a[n] = std::polar(std::exp(log_mag), n * std::arg(alpha));
    }
    return a;
  };
  const auto a1 = mode_amplitudes(alpha1, c1);
  const auto a2 = mode_amplitudes(alpha2, c2);

  StateVector state;
  state.modes.reserve(a1.size() * a2.size());
  state.amplitudes.resize(static_cast<Eigen::Index>(a1.size() * a2.size()));
  Eigen::Index idx = 0;
  for (int n1 = 0; n1 <= c1; ++n1)
    for (int n2 = 0; n2 <= c2; ++n2) {
      state.modes.push_back({n1, n2});
      state.amplitudes(idx++) = a1[n1] * a2[n2];
    }
  return state;
}

struct GlauberComponent {
  int two_j;
  /// ⟨j, τ | P_j |α1, α2⟩ with τ = α1/α2.
  cplx weight;
  /// Unnormalized projection P_j |α1, α2⟩ onto the n1 + n2 = 2j eigenspace.
  StateVector projected;

  double j() const noexcept { return 0.5 * two_j; }
};

/// Isotropic (p = q = 1) split of the two-mode Glauber state into SU(2)
/// coherent components, for 2j = 0 … two_j_max.
inline std::vector<GlauberComponent> decompose_glauber_su2(cplx alpha1, cplx alpha2,
                                                           int two_j_max) {
  if (alpha2 == cplx(0.0))
    throw DomainError("alpha2 = 0 is the pole of tau = alpha1/alpha2; use the theta = pi state");
  if (two_j_max < 0) throw DomainError("j_max must be >= 0");

  const OscillatorConfig isotropic(1, 1);
  const double R = std::norm(alpha1) + std::norm(alpha2);
  const double log_a1 = std::log(std::abs(alpha1));
  const double log_a2 = std::log(std::abs(alpha2));
  const cplx tau = alpha1 / alpha2;

  std::vector<GlauberComponent> out;
  out.reserve(static_cast<std::size_t>(two_j_max) + 1);
  for (int N = 0; N <= two_j_max; ++N) {
    const SubspaceBasis basis = enumerate_subspace(isotropic, 0, 0, N);
    StateVector proj;
    proj.modes = basis.states;
    proj.subspace = basis;
    proj.amplitudes.resize(N + 1);
    for (int n1 = 0; n1 <= N; ++n1) {
      const int n2 = N - n1;
      const double log_mag = -0.5 * R + detail::n_log(n1, log_a1) + detail::n_log(n2, log_a2) -
                             0.5 * (std::lgamma(n1 + 1.0) + std::lgamma(n2 + 1.0));
      proj.amplitudes(n1) =
          std::polar(std::exp(log_mag), n1 * std::arg(alpha1) + n2 * std::arg(alpha2));
    }
    const StateVector coherent = build_su2_coherent(spec_from_tau(tau, N), basis);
    const cplx weight = coherent.amplitudes.dot(proj.amplitudes);  // conjugates the left side
    out.push_back({N, weight, std::move(proj)});
  }
  return out;
}

/// Heisenberg evolution ⟨a1(t)⟩ = α1 e^{-iqωt}, ⟨a2(t)⟩ = α2 e^{-ipωt}.
inline std::pair<cplx, cplx> evolve_expectations(cplx alpha1, cplx alpha2,
                                                 const OscillatorConfig& cfg, double t) {
  return {alpha1 * std::polar(1.0, -cfg.freq_x() * t),
          alpha2 * std::polar(1.0, -cfg.freq_y() * t)};
}

}  // namespace su2lissajous
