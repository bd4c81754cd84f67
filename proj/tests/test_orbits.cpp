#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "su2lissajous/orbits.hpp"

using namespace su2lissajous;
using std::numbers::pi;

namespace {

LissajousOrbit make_orbit(int p, int q, double eta1, double eta2, double phi1, double phi2,
                          double omega = 1.0) {
  return {eta1, eta2, phi1, phi2, OscillatorConfig(p, q, omega)};
}

double angle_distance(double a, double b) { return std::abs(wrap_angle(a - b)); }

}  // namespace

TEST(OrbitPosition, Examples) {
  const auto o = make_orbit(2, 3, 1.5, 0.5, 0.0, 0.0);
  const auto pt = orbit_position(o, 0.0);
  EXPECT_EQ(pt.x, 1.5);
  EXPECT_EQ(pt.y, 0.5);

  const auto line = make_orbit(2, 3, 0.0, 2.0, 0.3, 0.1);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(orbit_position(line, 0.37 * i).x, 0.0);

  const auto diag = make_orbit(1, 1, 1.0, 1.0, 0.0, 0.0);
  for (int i = 0; i < 50; ++i) {
    const auto d = orbit_position(diag, 0.13 * i);
    EXPECT_EQ(d.x, d.y);
  }
}

TEST(OrbitPosition, ClosesAfterOnePeriod) {
  const auto o = make_orbit(3, 5, 1.2, 0.7, 0.4, 1.9, 1.7);
  for (double t : {0.0, 0.3, 2.2}) {
    const auto a = orbit_position(o, t);
    const auto b = orbit_position(o, t + o.cfg.period());
    EXPECT_NEAR(a.x, b.x, 1e-12);
    EXPECT_NEAR(a.y, b.y, 1e-12);
  }
}

TEST(PhaseTrajectory, InitialPointAndModulusLaw) {
  const auto o = make_orbit(2, 3, 1.3, 0.8, 0.0, 0.6, 0.9);
  const auto pt = phase_trajectory(o, 0.0);
  EXPECT_NEAR(pt.z1.real(), std::sqrt(0.9 * 3 / 2.0) * 1.3, 1e-15);
  EXPECT_EQ(pt.z1.imag(), 0.0);
  for (double t : {0.0, 0.4, 3.1}) {
    const auto s = phase_trajectory(o, t);
    EXPECT_NEAR(std::norm(s.ztilde1), std::norm(s.z1) / 2.0, 1e-14);
    EXPECT_NEAR(std::norm(s.ztilde2), std::norm(s.z2) / 3.0, 1e-14);
  }
}

TEST(PhaseTrajectory, ConservationAndStationarity) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> amp(0.1, 3.0), ang(-pi, pi), freq(0.3, 2.5);
  std::uniform_int_distribution<int> pq(1, 9);
  for (int trial = 0; trial < 40; ++trial) {
    const auto o = make_orbit(pq(rng), pq(rng), amp(rng), amp(rng), ang(rng), ang(rng), freq(rng));
    const auto p0 = phase_trajectory(o, 0.0);
    const double e0 = std::norm(p0.ztilde1) + std::norm(p0.ztilde2);
    const double a0 = std::arg(p0.ztilde2 / p0.ztilde1);
    const double expected = -(o.cfg.p() * o.phi1 - o.cfg.q() * o.phi2);
    EXPECT_LE(angle_distance(a0, expected), 1e-10);
    const int n = 1200;
    for (int i = 1; i <= n; ++i) {
      const auto s = phase_trajectory(o, o.cfg.period() * i / n);
      EXPECT_NEAR(std::norm(s.ztilde1) + std::norm(s.ztilde2), e0, 1e-10 * e0);
      EXPECT_LE(angle_distance(std::arg(s.ztilde2 / s.ztilde1), a0), 1e-10);
      EXPECT_NEAR(o.cfg.omega_prime() * (std::norm(s.ztilde1) + std::norm(s.ztilde2)),
                  classical_energy(o), 1e-10 * classical_energy(o));
    }
  }
}

TEST(PhaseTrajectory, UntwistedMotionHasOneFrequency) {
  for (auto [p, q] : {std::pair{2, 3}, {2, 2}, {3, 3}, {1, 4}}) {
    const auto o = make_orbit(p, q, 0.9, 1.4, 0.7, -0.2, 1.3);
    const double wc = o.cfg.omega_prime();
    const auto s0 = phase_trajectory(o, 0.0);
    for (int i = 1; i <= 200; ++i) {
      const double t = 0.031 * i;
      const auto s = phase_trajectory(o, t);
      const cplx rot = std::polar(1.0, wc * t);
      EXPECT_NEAR(std::abs(s.ztilde1 * rot - s0.ztilde1), 0.0, 1e-11);
      EXPECT_NEAR(std::abs(s.ztilde2 * rot - s0.ztilde2), 0.0, 1e-11);
    }
  }
}

TEST(PhaseTrajectory, DegenerateOrbitSignalled) {
  EXPECT_THROW(phase_trajectory(make_orbit(2, 3, 0.0, 1.0, 0.0, 0.0), 0.5), DegenerateOrbitError);
  EXPECT_THROW(phase_trajectory(make_orbit(2, 3, 1.0, 0.0, 0.0, 0.0), 0.5), DegenerateOrbitError);
  EXPECT_NO_THROW(classical_phase(make_orbit(2, 3, 0.0, 1.0, 0.0, 0.0), 0.5));
}

TEST(ClassicalEnergy, Examples) {
  EXPECT_EQ(classical_energy(make_orbit(2, 3, 0.0, 0.0, 0.0, 0.0)), 0.0);
  EXPECT_NEAR(classical_energy(make_orbit(1, 2, 1.0, 2.0, 0.0, 0.0)), 4.0, 1e-15);
}

TEST(ClassicalEnergy, CoherentOrbitsCarryQuantumEnergy) {
  for (auto [p, q] : {std::pair{1, 2}, {2, 3}, {4, 6}, {5, 5}})
    for (int N : {0, 3, 40})
      for (double theta : {0.0, 0.4, 1.9, pi}) {
        const OscillatorConfig cfg(p, q, 0.8);
        const auto ens = orbits_from_coherent({N, theta, 2.1}, cfg);
        for (const auto& o : ens.orbits)
          EXPECT_NEAR(classical_energy(o), 0.8 * p * q * (N + 1), 1e-10 * p * q * (N + 1));
      }
}

TEST(Stereographic, Examples) {
  EXPECT_NEAR(std::abs(stereographic(3.0, 0.0, 0.0, 3.0) - cplx(6.0)), 0.0, 1e-15);
  EXPECT_EQ(stereographic(0.0, 0.0, -3.0, 3.0), cplx(0.0));
  EXPECT_NEAR(std::abs(stereographic(3.0, 0.0, 0.0, 3.0, ProjectionPole::South) - cplx(6.0)), 0.0,
              1e-15);
  EXPECT_THROW(stereographic(0.0, 0.0, 3.0, 3.0), PointAtInfinityError);
  EXPECT_THROW(stereographic(0.0, 0.0, -3.0, 3.0, ProjectionPole::South), PointAtInfinityError);
  EXPECT_THROW(stereographic(1.0, 1.0, 1.0, 3.0), DomainError);
  EXPECT_THROW(stereographic(0.0, 0.0, 0.0, 0.0), DomainError);
}

TEST(Stereographic, CoherentSpherePoints) {
  for (int N : {1, 10, 35})
    for (double theta : {0.2, 1.0, pi / 2, 2.8})
      for (double phi : {0.0, 1.3, 5.9}) {
        const SU2CoherentSpec spec{N, theta, phi};
        const double j = spec.j();
        const cplx tau = *spec.tau();
        const auto v = classical_limit_map(spec);
        // the north chart yields the conjugate of 2jτ; the south chart gives 2j/τ
        EXPECT_NEAR(std::abs(stereographic(v.x, v.y, v.z, j) - 2.0 * j * std::conj(tau)), 0.0,
                    1e-11 * j * (1.0 + std::abs(tau)));
        const cplx south = stereographic(v.x, v.y, v.z, j, ProjectionPole::South);
        EXPECT_NEAR(std::abs(south - 2.0 * j / tau), 0.0, 1e-11 * j * (1.0 + 1.0 / std::abs(tau)));
        // north and south charts are related by Z_N · conj(Z_S) = 4j²
        EXPECT_NEAR(std::abs(stereographic(v.x, v.y, v.z, j) * std::conj(south) - 4.0 * j * j), 0.0,
                    1e-9 * j * j);
      }
}

TEST(Stereographic, OrbitCoordinateMatchesSouthChart) {
  for (auto [p, q] : {std::pair{1, 1}, {1, 2}, {2, 3}, {4, 6}})
    for (double theta : {0.3, 1.4, 2.6})
      for (double phi : {0.0, 2.2, 4.5}) {
        const SU2CoherentSpec spec{12, theta, phi};
        const auto v = classical_limit_map(spec);
        const cplx south = stereographic(v.x, v.y, v.z, spec.j(), ProjectionPole::South);
        for (const auto& o : orbits_from_coherent(spec, OscillatorConfig(p, q)).orbits)
          for (double t : {0.0, 0.9, 4.4})
            EXPECT_NEAR(std::abs(projective_coordinate(o, spec.j(), t) - south), 0.0,
                        1e-10 * std::abs(south));
      }
}

TEST(ClassicalLimitMap, Examples) {
  auto v = classical_limit_map({6, 0.0, 0.0});
  EXPECT_EQ(v.x, 0.0);
  EXPECT_EQ(v.y, 0.0);
  EXPECT_EQ(v.z, -3.0);
  v = classical_limit_map({10, pi / 2, 0.0});
  EXPECT_NEAR(v.x, 5.0, 1e-15);
  EXPECT_EQ(v.y, 0.0);
  EXPECT_NEAR(v.z, 0.0, 1e-15);
}

TEST(OrbitsFromCoherent, Examples) {
  for (int N : {0, 5, 80}) {
    const auto ens = orbits_from_coherent({N, pi / 2, 0.0}, OscillatorConfig(1, 1));
    ASSERT_EQ(ens.size(), 1u);
    EXPECT_NEAR(ens.orbits[0].eta1, std::sqrt(N + 1.0), 1e-12);
    EXPECT_NEAR(ens.orbits[0].eta2, std::sqrt(N + 1.0), 1e-12);
    EXPECT_EQ(ens.orbits[0].phi1, 0.0);
    EXPECT_EQ(ens.orbits[0].phi2, 0.0);
  }

  const auto e = orbits_from_coherent({40, pi / 2, 0.0}, OscillatorConfig(1, 2));
  ASSERT_EQ(e.size(), 1u);
  EXPECT_NEAR(e.orbits[0].eta1, std::sqrt(41.0 / 2.0), 1e-12);
  EXPECT_NEAR(e.orbits[0].eta2, std::sqrt(82.0), 1e-12);

  const auto two = orbits_from_coherent({10, 1.0, 0.0}, OscillatorConfig(2, 2));
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two.k_labels, (std::vector<int>{0, 1}));
  EXPECT_EQ(two.orbits[0].phi1, 0.0);
  EXPECT_NEAR(two.orbits[1].phi1, pi, 1e-15);
  EXPECT_EQ(two.orbits[0].eta1, two.orbits[1].eta1);
  EXPECT_EQ(two.orbits[0].eta2, two.orbits[1].eta2);
}

TEST(OrbitsFromCoherent, RoundTrip) {
  for (int p = 1; p <= 6; ++p)
    for (int q = 1; q <= 6; ++q)
      for (double theta : {0.05, 0.8, pi / 2, 2.9})
        for (double phi : {0.0, 0.7, 3.3, 6.2}) {
          const OscillatorConfig cfg(p, q, 1.4);
          const SU2CoherentSpec spec{17, theta, phi};
          const auto ens = orbits_from_coherent(spec, cfg);
          ASSERT_EQ(static_cast<int>(ens.size()), cfg.common_factor());
          for (const auto& o : ens.orbits) {
            EXPECT_NEAR(q * o.eta1 / (p * o.eta2), std::abs(*spec.tau()),
                        1e-12 * std::max(1.0, std::abs(*spec.tau())));
            EXPECT_LE(angle_distance(p * o.phi1 - q * o.phi2, phi), 1e-12);
            EXPECT_EQ(o.phi2, 0.0);
          }
        }
}

TEST(OrbitsFromCoherent, PolesGiveLineOrbits) {
  const OscillatorConfig cfg(2, 3);
  auto ens = orbits_from_coherent({9, 0.0, 1.2}, cfg);
  EXPECT_EQ(ens.orbits[0].eta1, 0.0);
  EXPECT_GT(ens.orbits[0].eta2, 0.0);
  EXPECT_EQ(ens.orbits[0].phi1, 0.0);
  ens = orbits_from_coherent({9, pi, 1.2}, cfg);
  EXPECT_EQ(ens.orbits[0].eta2, 0.0);
  EXPECT_GT(ens.orbits[0].eta1, 0.0);
  EXPECT_EQ(ens.orbits[0].phi1, 0.0);
}

TEST(CurveComparison, ReparametrizationAndDistinctness) {
  const auto a = make_orbit(2, 3, 1.0, 1.5, 0.4, 0.0);
  // shifting time by Δ moves (φ1, φ2) by (qωΔ, pωΔ)
  const double d = 0.77;
  const auto shifted = make_orbit(2, 3, 1.0, 1.5, 0.4 + 3 * d, 2 * d);
  EXPECT_TRUE(same_curve(a, shifted));
  const auto reversed = make_orbit(2, 3, 1.0, 1.5, -0.4, 0.0);
  EXPECT_TRUE(same_curve(a, reversed));
  const auto other = make_orbit(2, 3, 1.0, 1.5, 0.5, 0.0);
  EXPECT_FALSE(same_curve(a, other));
  EXPECT_GT(curve_hausdorff(a, other), 1e-3);
}

TEST(OrbitsFromCoherent, EnsembleHasExactlyMDistinctCurves) {
  // every k = 0 … p-1 yields a valid phase; the distinct curves among them
  // must be exactly the M returned orbits
  const double phi = 0.7;
  for (int p = 1; p <= 12; ++p)
    for (int q = 1; q <= 12; ++q) {
      const OscillatorConfig cfg(p, q);
      const auto ens = orbits_from_coherent({20, 1.1, phi}, cfg);
      const int M = cfg.common_factor();
      ASSERT_EQ(static_cast<int>(ens.size()), M);
      for (int a = 0; a < M; ++a)
        for (int b = a + 1; b < M; ++b)
          EXPECT_FALSE(same_curve(ens.orbits[a], ens.orbits[b])) << p << "," << q << " " << a << b;
      auto base = ens.orbits[0];
      for (int k = M; k < p; ++k) {
        base.phi1 = (phi + 2.0 * pi * k) / p;
        EXPECT_TRUE(same_curve(base, ens.orbits[k % M])) << p << "," << q << " k=" << k;
      }
    }
}
