#pragma once

// Commensurate anisotropic oscillator H = (px² + py² + (qω)²x² + (pω)²y²)/2
// in units ħ = m = 1. Mode 1 (x) has frequency qω, mode 2 (y) has pω.

#include <cstdint>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "su2lissajous/errors.hpp"

namespace su2lissajous {

class OscillatorConfig {
 public:
  OscillatorConfig(int p, int q, double omega = 1.0) : p_(p), q_(q), omega_(omega) {
    if (p < 1) throw DomainError("p must be >= 1, got " + std::to_string(p));
    if (q < 1) throw DomainError("q must be >= 1, got " + std::to_string(q));
    if (!(omega > 0.0)) throw DomainError("omega must be > 0");
    common_factor_ = std::gcd(p, q);
  }

  int p() const noexcept { return p_; }
  int q() const noexcept { return q_; }
  double omega() const noexcept { return omega_; }

  /// M = gcd(p, q); p and q are deliberately not reduced by it.
  int common_factor() const noexcept { return common_factor_; }

  /// ω' = ωpq, the level spacing inside one degenerate family.
  double omega_prime() const noexcept { return omega_ * p_ * q_; }

  double freq_x() const noexcept { return q_ * omega_; }
  double freq_y() const noexcept { return p_ * omega_; }

  /// Classical period shared by every Lissajous orbit.
  double period() const noexcept { return 2.0 * std::numbers::pi / omega_; }

 private:
  int p_;
  int q_;
  double omega_;
  int common_factor_;
};

/// Two-mode occupation |n1', n2'⟩ in the original (untransformed) Fock basis.
struct FockState {
  int n1;
  int n2;
  friend bool operator==(const FockState&, const FockState&) = default;
};

/// Degenerate eigenspace {|n1 p + λ1, n2 q + λ2⟩ : n1 + n2 = 2j}. States are
/// ordered by m = (n1 - n2)/2 ascending, so index i carries n1 = i.
struct SubspaceBasis {
  int lambda1 = 0;
  int lambda2 = 0;
  int two_j = 0;
  std::vector<FockState> states;

  double j() const noexcept { return 0.5 * two_j; }
  int dimension() const noexcept { return two_j + 1; }
};

struct BezoutSolution {
  int M;
  std::int64_t nu1;
  std::int64_t nu2;
};

/// p·ν1 + q·ν2 = gcd(p, q), normalized so that 0 ≤ ν1 < q/M.
inline BezoutSolution gcd_bezout(int p, int q) {
  if (p < 1 || q < 1) throw DomainError("gcd_bezout requires p, q >= 1");
  // extended Euclid on (p, q): invariant a = p·x0 + q·y0, b = p·x1 + q·y1
  std::int64_t a = p, b = q;
  std::int64_t x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    const std::int64_t t = a / b;
    a -= t * b;
    std::swap(a, b);
    x0 -= t * x1;
    std::swap(x0, x1);
    y0 -= t * y1;
    std::swap(y0, y1);
  }
  const std::int64_t g = a;
  const std::int64_t modulus = q / g;
  std::int64_t nu1 = x0 % modulus;
  if (nu1 < 0) nu1 += modulus;
  const std::int64_t nu2 = (g - static_cast<std::int64_t>(p) * nu1) / q;
  return {static_cast<int>(g), nu1, nu2};
}

/// ω'[(n1' + ½)/p + (n2' + ½)/q].
inline double energy_of_state(const OscillatorConfig& cfg, int n1_prime, int n2_prime) {
  if (n1_prime < 0 || n2_prime < 0) throw DomainError("occupation numbers must be >= 0");
  return cfg.omega_prime() *
         ((n1_prime + 0.5) / cfg.p() + (n2_prime + 0.5) / cfg.q());
}

inline SubspaceBasis enumerate_subspace(const OscillatorConfig& cfg, int lambda1, int lambda2,
                                        int N) {
  if (lambda1 < 0 || lambda1 >= cfg.p())
    throw DomainError("lambda1 must lie in [0, p), got " + std::to_string(lambda1));
  if (lambda2 < 0 || lambda2 >= cfg.q())
    throw DomainError("lambda2 must lie in [0, q), got " + std::to_string(lambda2));
  if (N < 0) throw DomainError("N must be >= 0");

  SubspaceBasis basis;
  basis.lambda1 = lambda1;
  basis.lambda2 = lambda2;
  basis.two_j = N;
  basis.states.reserve(static_cast<std::size_t>(N) + 1);
  for (int n1 = 0; n1 <= N; ++n1) {
    const int n2 = N - n1;
    basis.states.push_back({n1 * cfg.p() + lambda1, n2 * cfg.q() + lambda2});
  }
  return basis;
}

/// Common energy of the subspace: ω'[N + (λ1 + ½)/p + (λ2 + ½)/q].
inline double subspace_energy(const OscillatorConfig& cfg, const SubspaceBasis& basis) {
  return cfg.omega_prime() * (basis.two_j + (basis.lambda1 + 0.5) / cfg.p() +
                              (basis.lambda2 + 0.5) / cfg.q());
}

/// ω'(2j + 1), the energy of the family in the isotropic (transformed)
/// picture. It differs from subspace_energy by the constant zero-point shift
/// ω'[(λ1 + ½)/p + (λ2 + ½)/q - 1], which vanishes only for p = q = 1.
inline double transformed_energy(const OscillatorConfig& cfg, const SubspaceBasis& basis) {
  return cfg.omega_prime() * (basis.two_j + 1.0);
}

}  // namespace su2lissajous
