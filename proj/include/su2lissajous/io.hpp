#pragma once

// CSV exports. Floats are printed with 17 significant digits, lines end in '\n'.

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <unistd.h>
#include <vector>

#include "su2lissajous/localization.hpp"
#include "su2lissajous/orbits.hpp"
#include "su2lissajous/su2.hpp"
#include "su2lissajous/wavefield.hpp"

namespace su2lissajous {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Header `k,t,x,y`; n_samples rows per orbit at t_i = i·T/n_samples.
inline std::string orbits_csv(const LissajousEnsemble& ensemble, int n_samples) {
  if (n_samples < 1) throw DomainError("n_samples must be >= 1");
  std::string out = "k,t,x,y\n";
  for (std::size_t k = 0; k < ensemble.size(); ++k) {
    const LissajousOrbit& orbit = ensemble.orbits[k];
    const double dt = orbit.cfg.period() / n_samples;
    for (int i = 0; i < n_samples; ++i) {
      const double t = i * dt;
      const Point2 pt = orbit_position(orbit, t);
      out += std::to_string(ensemble.k_labels[k]) + ',' + format_real(t) + ',' +
             format_real(pt.x) + ',' + format_real(pt.y) + '\n';
    }
  }
  return out;
}

/// Header `x,y,density`, one row per cell center, y slowest.
inline std::string density_csv(const DensityField& field) {
  const GridSpec& g = field.grid;
  std::string out = "x,y,density\n";
  out.reserve(out.size() + field.values.size() * 64);
  for (int iy = 0; iy < g.ny; ++iy) {
    const std::string y = format_real(g.y_at(iy));
    for (int ix = 0; ix < g.nx; ++ix)
      out += format_real(g.x_at(ix)) + ',' + y + ',' + format_real(field.at(ix, iy)) + '\n';
  }
  return out;
}

/// Header `N,epsilon,union_mass,per_orbit_masses`, masses joined with ';'.
inline std::string report_csv(const std::vector<ScanEntry>& entries) {
  std::string out = "N,epsilon,union_mass,per_orbit_masses\n";
  for (const auto& e : entries) {
    out += std::to_string(e.N) + ',' + format_real(e.report.epsilon) + ',' +
           format_real(e.report.union_mass) + ',';
    for (std::size_t k = 0; k < e.report.per_orbit_mass.size(); ++k) {
      if (k) out += ';';
      out += format_real(e.report.per_orbit_mass[k]);
    }
    out += '\n';
  }
  return out;
}

/// Header `n1,n2,re,im` over the state's modes.
inline std::string amplitudes_csv(const StateVector& state) {
  std::string out = "n1,n2,re,im\n";
  for (std::size_t k = 0; k < state.modes.size(); ++k) {
    const cplx a = state.amplitudes(static_cast<Eigen::Index>(k));
    out += std::to_string(state.modes[k].n1) + ',' + std::to_string(state.modes[k].n2) + ',' +
           format_real(a.real()) + ',' + format_real(a.imag()) + '\n';
  }
  return out;
}

/// Header `j,weight_re,weight_im,probability`.
inline std::string decomposition_csv(const std::vector<GlauberComponent>& parts) {
  std::string out = "j,weight_re,weight_im,probability\n";
  for (const auto& c : parts)
    out += format_real(c.j()) + ',' + format_real(c.weight.real()) + ',' +
           format_real(c.weight.imag()) + ',' + format_real(std::norm(c.weight)) + '\n';
  return out;
}

/// Writes `content` to a sibling temporary file and renames it over `path`.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError(path.string() + ": cannot open for writing: " + std::strerror(errno));
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    os.flush();
    if (!os) {
      const std::string cause = std::strerror(errno);
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw IoError(path.string() + ": write failed: " + cause);
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw IoError(path.string() + ": rename failed: " + ec.message());
  }
}

}  // namespace su2lissajous
