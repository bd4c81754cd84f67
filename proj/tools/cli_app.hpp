#pragma once

// Command-line front end: argument parsing, validation and dispatch.
// Exit codes: 0 success, 2 usage error, 3 domain error, 4 I/O error.

#include <cmath>
#include <complex>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "su2lissajous/su2lissajous.hpp"

namespace su2lissajous::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitIo = 4;

enum class Subcommand { bezout, spectrum, coherent, density, orbits, localize, evolve, decompose };

/// Failure while turning argv into a RunConfig.
struct CliError {
  int exit_code;
  std::string message;
};

struct RunConfig {
  Subcommand subcommand = Subcommand::bezout;
  std::optional<int> p;
  std::optional<int> q;
  double omega = 1.0;
  std::optional<int> N;
  std::optional<double> theta;
  std::optional<double> phi;
  int lambda1 = 0;
  int lambda2 = 0;
  std::optional<cplx> alpha1;
  std::optional<cplx> alpha2;
  std::optional<double> j_max;
  int grid = 512;
  std::optional<double> half_width;
  std::optional<double> epsilon;
  int samples = kDefaultOrbitSamples;
  std::vector<int> N_list;
  std::string out_path;
  /// Set when --help was requested; run() prints it and exits 0.
  std::optional<std::string> help_text;
};

/// Parses `a+bi`, `a-bi`, `a` or `bi` (no spaces).
inline std::optional<cplx> parse_complex(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto parse_real = [](const std::string& s, double& v) {
    if (s.empty() || s == "+" || s == "-") return false;
    std::size_t used = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      return false;
    }
    return used == s.size();
  };
  if (text.back() != 'i') {
    double re;
    if (!parse_real(text, re)) return std::nullopt;
    return cplx(re, 0.0);
  }
  const std::string body = text.substr(0, text.size() - 1);
  // split at the last sign that is not a leading sign or an exponent sign
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  double re = 0.0, im = 0.0;
  if (split == std::string::npos) {
    const std::string imag = (body.empty() || body == "+" || body == "-") ? body + "1" : body;
    if (!parse_real(imag, im)) return std::nullopt;
    return cplx(0.0, im);
  }
  std::string imag = body.substr(split);
  if (imag == "+" || imag == "-") imag += "1";
  if (!parse_real(body.substr(0, split), re) || !parse_real(imag, im)) return std::nullopt;
  return cplx(re, im);
}

namespace detail {

inline const char* name_of(Subcommand s) {
  switch (s) {
    case Subcommand::bezout: return "bezout";
    case Subcommand::spectrum: return "spectrum";
    case Subcommand::coherent: return "coherent";
    case Subcommand::density: return "density";
    case Subcommand::orbits: return "orbits";
    case Subcommand::localize: return "localize";
    case Subcommand::evolve: return "evolve";
    case Subcommand::decompose: return "decompose";
  }
  return "?";
}

inline void domain_fail(const std::string& msg) { throw CliError{kExitDomain, "error: " + msg}; }
inline void usage_fail(const std::string& msg) { throw CliError{kExitUsage, "usage error: " + msg}; }

template <class T>
void require(const std::optional<T>& v, const char* flag, Subcommand s) {
  if (!v) usage_fail(std::string(name_of(s)) + " requires " + flag);
}

/// Domain checks on every supplied value, then presence of required flags.
inline void validate(const RunConfig& c, bool needs_state, bool needs_alpha) {
  if (c.p && *c.p < 1) domain_fail("p must be >= 1");
  if (c.q && *c.q < 1) domain_fail("q must be >= 1");
  if (!(c.omega > 0.0) || !std::isfinite(c.omega)) domain_fail("omega must be > 0");
  if (c.p && (c.lambda1 < 0 || c.lambda1 >= *c.p)) domain_fail("lambda1 must lie in [0, p)");
  if (c.q && (c.lambda2 < 0 || c.lambda2 >= *c.q)) domain_fail("lambda2 must lie in [0, q)");
  if (c.N && *c.N < 0) domain_fail("N must be >= 0");
  if (c.theta && !(*c.theta >= 0.0 && *c.theta <= std::numbers::pi))
    domain_fail("theta must lie in [0, pi] (radians)");
  if (c.phi && !(*c.phi >= 0.0 && *c.phi < 2.0 * std::numbers::pi))
    domain_fail("phi must lie in [0, 2pi) (radians)");
  if (c.grid < 1) domain_fail("grid must be >= 1");
  if (c.half_width && !(*c.half_width > 0.0)) domain_fail("half-width must be > 0");
  if (c.epsilon && !(*c.epsilon > 0.0)) domain_fail("epsilon must be > 0");
  if (c.samples < 1) domain_fail("samples must be >= 1");
  if (c.subcommand == Subcommand::localize && c.samples < 1024)
    domain_fail("localize requires samples >= 1024");
  for (std::size_t i = 0; i < c.N_list.size(); ++i) {
    if (c.N_list[i] < 0) domain_fail("N-list entries must be >= 0");
    if (i && c.N_list[i] < c.N_list[i - 1]) domain_fail("N-list must be ascending");
  }
  if (c.j_max && !(*c.j_max >= 0.0 && std::floor(2.0 * *c.j_max) == 2.0 * *c.j_max))
    domain_fail("jmax must be a nonnegative multiple of 1/2");
  if (c.subcommand == Subcommand::decompose && c.alpha2 && *c.alpha2 == cplx(0.0))
    domain_fail("alpha2 must be nonzero (tau = alpha1/alpha2)");

  const Subcommand s = c.subcommand;
  if (s != Subcommand::decompose) {
    require(c.p, "--p", s);
    require(c.q, "--q", s);
  }
  if (needs_state) {
    if (s != Subcommand::localize) require(c.N, "--N", s);
    require(c.theta, "--theta", s);
    require(c.phi, "--phi", s);
  }
  if (s == Subcommand::spectrum) require(c.N, "--N", s);
  if (s == Subcommand::localize && c.N_list.empty()) usage_fail("localize requires --N-list");
  if (needs_alpha) {
    require(c.alpha1, "--alpha1", s);
    require(c.alpha2, "--alpha2", s);
  }
  if (s == Subcommand::decompose) require(c.j_max, "--jmax", s);
  if ((s == Subcommand::density || s == Subcommand::orbits) && c.out_path.empty())
    usage_fail(std::string(name_of(s)) + " requires --out");
}

}  // namespace detail

/// argv[0] is the program name. Throws CliError on failure.
inline RunConfig parse_args(const std::vector<std::string>& argv) {
  RunConfig cfg;
  CLI::App app{"SU(2) coherent states of the commensurate anisotropic oscillator and their "
               "Lissajous orbit ensembles.\nNatural units: hbar = mass = 1; angles in radians.",
               "su2lissajous"};
  app.require_subcommand(1);

  std::string alpha1_text, alpha2_text;
  std::optional<int> p, q, N;
  std::optional<double> theta, phi, j_max, half_width, epsilon;

  auto add_pq = [&](CLI::App* sub) {
    sub->add_option("--p", p, "mode-2 (y) frequency multiplier, y frequency = p*omega (required)");
    sub->add_option("--q", q, "mode-1 (x) frequency multiplier, x frequency = q*omega (required)");
    sub->add_option("--omega", cfg.omega, "common frequency (natural units)")->capture_default_str();
  };
  auto add_family = [&](CLI::App* sub) {
    sub->add_option("--lambda1", cfg.lambda1, "mode-1 residue, in [0, p)")->capture_default_str();
    sub->add_option("--lambda2", cfg.lambda2, "mode-2 residue, in [0, q)")->capture_default_str();
  };
  auto add_coherent = [&](CLI::App* sub, bool with_N) {
    if (with_N) sub->add_option("--N", N, "N = 2j, number of quanta in the family (required)");
    sub->add_option("--theta", theta, "polar angle in [0, pi], radians (required)");
    sub->add_option("--phi", phi, "azimuth in [0, 2pi), radians (required)");
    add_family(sub);
  };
  auto add_alpha = [&](CLI::App* sub) {
    sub->add_option("--alpha1", alpha1_text, "mode-1 Glauber amplitude, form a+bi (required)");
    sub->add_option("--alpha2", alpha2_text, "mode-2 Glauber amplitude, form a+bi (required)");
  };
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--grid", cfg.grid, "grid points per axis")->capture_default_str();
    sub->add_option("--half-width", half_width,
                    "grid half-width in position units (default: 1.25*max(eta1,eta2) + "
                    "4/sqrt(min(p,q)*omega))");
  };

  auto* bezout = app.add_subcommand("bezout", "gcd M and Bezout coefficients p*nu1 + q*nu2 = M");
  add_pq(bezout);

  auto* spectrum = app.add_subcommand("spectrum", "energy of a degenerate eigenspace");
  add_pq(spectrum);
  add_family(spectrum);
  spectrum->add_option("--N", N, "N = n1 + n2 (required)");

  auto* coherent = app.add_subcommand("coherent", "SU(2) coherent state and its <J> expectations");
  add_pq(coherent);
  add_coherent(coherent, true);
  coherent->add_option("--out", cfg.out_path, "optional amplitudes CSV (n1,n2,re,im)");

  auto* density = app.add_subcommand("density", "position density of an SU(2) coherent state");
  add_pq(density);
  add_coherent(density, true);
  add_grid(density);
  density->add_option("--out", cfg.out_path, "output CSV x,y,density (required)");

  auto* orbits = app.add_subcommand("orbits", "Lissajous orbit ensemble of an SU(2) coherent state");
  add_pq(orbits);
  add_coherent(orbits, true);
  orbits->add_option("--samples", cfg.samples, "samples per orbit over one period")
      ->capture_default_str();
  orbits->add_option("--out", cfg.out_path, "output CSV k,t,x,y (required)");

  auto* localize = app.add_subcommand("localize", "tube-mass localization scan over N");
  add_pq(localize);
  add_coherent(localize, false);
  localize->add_option("--N-list", cfg.N_list, "ascending N values, comma separated (required)")
      ->delimiter(',');
  localize->add_option("--epsilon", epsilon,
                       "tube radius in position units (default: 3*(1/sqrt(2q*omega) + "
                       "1/sqrt(2p*omega))/2)");
  add_grid(localize);
  localize->add_option("--samples", cfg.samples, "polyline samples per orbit (>= 1024)")
      ->capture_default_str();
  localize->add_option("--out", cfg.out_path, "optional report CSV N,epsilon,union_mass,per_orbit_masses");

  auto* evolve = app.add_subcommand("evolve", "Glauber-state vs classical trajectory deviation");
  add_pq(evolve);
  add_alpha(evolve);
  evolve->add_option("--samples", cfg.samples, "time samples over one period")->capture_default_str();

  auto* decompose = app.add_subcommand("decompose", "isotropic Glauber state split into SU(2) coherent states");
  add_alpha(decompose);
  decompose->add_option("--jmax", j_max, "largest j, a multiple of 1/2 (required)");
  decompose->add_option("--out", cfg.out_path, "optional CSV j,weight_re,weight_im,probability");

  std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    for (const auto* sub : app.get_subcommands()) target = sub;
    cfg.help_text = target->help();
    return cfg;
  } catch (const CLI::ParseError& e) {
    throw CliError{kExitUsage, std::string("usage error: ") + e.what()};
  }

  const CLI::App* chosen = app.get_subcommands().front();
  const std::pair<const CLI::App*, Subcommand> table[] = {
      {bezout, Subcommand::bezout},     {spectrum, Subcommand::spectrum},
      {coherent, Subcommand::coherent}, {density, Subcommand::density},
      {orbits, Subcommand::orbits},     {localize, Subcommand::localize},
      {evolve, Subcommand::evolve},     {decompose, Subcommand::decompose}};
  for (const auto& [app_ptr, sc] : table)
    if (app_ptr == chosen) cfg.subcommand = sc;

  cfg.p = p;
  cfg.q = q;
  cfg.N = N;
  cfg.theta = theta;
  cfg.phi = phi;
  cfg.j_max = j_max;
  cfg.half_width = half_width;
  cfg.epsilon = epsilon;
  if (!alpha1_text.empty()) {
    cfg.alpha1 = parse_complex(alpha1_text);
    if (!cfg.alpha1) detail::usage_fail("--alpha1 must have the form a+bi, got '" + alpha1_text + "'");
  }
  if (!alpha2_text.empty()) {
    cfg.alpha2 = parse_complex(alpha2_text);
    if (!cfg.alpha2) detail::usage_fail("--alpha2 must have the form a+bi, got '" + alpha2_text + "'");
  }

  const Subcommand s = cfg.subcommand;
  const bool needs_state = s == Subcommand::coherent || s == Subcommand::density ||
                           s == Subcommand::orbits || s == Subcommand::localize;
  const bool needs_alpha = s == Subcommand::evolve || s == Subcommand::decompose;
  detail::validate(cfg, needs_state, needs_alpha);
  return cfg;
}

namespace detail {

inline std::string fmt(double v) { return format_real(v); }

inline SU2CoherentSpec spec_of(const RunConfig& c, int N) {
  return {N, *c.theta, *c.phi, c.lambda1, c.lambda2};
}

}  // namespace detail

/// Executes a validated RunConfig; prints a one-line summary to `out` and
/// diagnostics to `err`.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  using detail::fmt;
  if (c.help_text) {
    out << *c.help_text;
    return kExitOk;
  }
  try {
    switch (c.subcommand) {
      case Subcommand::bezout: {
        const auto b = gcd_bezout(*c.p, *c.q);
        out << "M=" << b.M << " nu1=" << b.nu1 << " nu2=" << b.nu2 << '\n';
        break;
      }
      case Subcommand::spectrum: {
        const OscillatorConfig osc(*c.p, *c.q, c.omega);
        const auto basis = enumerate_subspace(osc, c.lambda1, c.lambda2, *c.N);
        out << "E=" << fmt(subspace_energy(osc, basis))
            << " E_transformed=" << fmt(transformed_energy(osc, basis)) << " j=" << fmt(basis.j())
            << " dim=" << basis.dimension() << '\n';
        break;
      }
      case Subcommand::coherent: {
        const OscillatorConfig osc(*c.p, *c.q, c.omega);
        const auto basis = enumerate_subspace(osc, c.lambda1, c.lambda2, *c.N);
        const auto state = build_su2_coherent(detail::spec_of(c, *c.N), basis);
        const auto jv = j_expectations(state, build_generators(basis));
        if (!c.out_path.empty()) write_atomic(c.out_path, amplitudes_csv(state));
        out << "E=" << fmt(subspace_energy(osc, basis)) << " Jx=" << fmt(jv.x)
            << " Jy=" << fmt(jv.y) << " Jz=" << fmt(jv.z) << " norm=" << fmt(state.norm());
        if (!c.out_path.empty()) out << " wrote " << c.out_path;
        out << '\n';
        break;
      }
      case Subcommand::density: {
        const OscillatorConfig osc(*c.p, *c.q, c.omega);
        const auto spec = detail::spec_of(c, *c.N);
        const auto basis = enumerate_subspace(osc, c.lambda1, c.lambda2, *c.N);
        const auto state = build_su2_coherent(spec, basis);
        const GridSpec grid = c.half_width
                                  ? square_grid(*c.half_width, c.grid)
                                  : default_grid(orbits_from_coherent(spec, osc), osc, c.grid);
        const auto field = evaluate_density(state, osc, grid);
        write_atomic(c.out_path, density_csv(field));
        out << "wrote " << c.out_path << " mass=" << fmt(integrate(field)) << '\n';
        break;
      }
      case Subcommand::orbits: {
        const OscillatorConfig osc(*c.p, *c.q, c.omega);
        const auto ens = orbits_from_coherent(detail::spec_of(c, *c.N), osc);
        write_atomic(c.out_path, orbits_csv(ens, c.samples));
        out << "wrote " << c.out_path << " orbits=" << ens.size()
            << " rows=" << ens.size() * static_cast<std::size_t>(c.samples) << '\n';
        break;
      }
      case Subcommand::localize: {
        const OscillatorConfig osc(*c.p, *c.q, c.omega);
        const EpsilonRule rule = c.epsilon ? EpsilonRule([e = *c.epsilon](const OscillatorConfig&, int) { return e; })
                                           : fixed_width_rule();
        ScanOptions opts{c.grid, c.samples};
        std::vector<ScanEntry> entries;
        for (int N : c.N_list) {
          const auto spec = detail::spec_of(c, N);
          const auto basis = enumerate_subspace(osc, c.lambda1, c.lambda2, N);
          const auto ens = orbits_from_coherent(spec, osc);
          const GridSpec grid =
              c.half_width ? square_grid(*c.half_width, c.grid) : default_grid(ens, osc, c.grid);
          const auto field = evaluate_density(build_su2_coherent(spec, basis), osc, grid);
          entries.push_back({N, tube_mass(field, ens, rule(osc, N), opts.n_samples)});
          if (entries.back().report.coverage_warning)
            err << "warning: N=" << N << ": " << *entries.back().report.coverage_warning << '\n';
        }
        if (!c.out_path.empty()) write_atomic(c.out_path, report_csv(entries));
        out << "union_mass=";
        for (std::size_t i = 0; i < entries.size(); ++i)
          out << (i ? ";" : "") << fmt(entries[i].report.union_mass);
        if (!c.out_path.empty()) out << " wrote " << c.out_path;
        out << '\n';
        break;
      }
      case Subcommand::evolve: {
        const OscillatorConfig osc(*c.p, *c.q, c.omega);
        std::vector<double> ts(static_cast<std::size_t>(c.samples));
        for (int i = 0; i < c.samples; ++i) ts[i] = i * osc.period() / c.samples;
        out << "max_deviation=" << fmt(glauber_trajectory_check(*c.alpha1, *c.alpha2, osc, ts))
            << '\n';
        break;
      }
      case Subcommand::decompose: {
        const auto parts = decompose_glauber_su2(*c.alpha1, *c.alpha2,
                                                 static_cast<int>(std::lround(2.0 * *c.j_max)));
        double total = 0.0;
        for (const auto& part : parts) total += std::norm(part.weight);
        if (!c.out_path.empty()) write_atomic(c.out_path, decomposition_csv(parts));
        out << "components=" << parts.size() << " total_probability=" << fmt(total);
        if (!c.out_path.empty()) out << " wrote " << c.out_path;
        out << '\n';
        break;
      }
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace su2lissajous::cli
