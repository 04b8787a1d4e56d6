#pragma once

// Deterministic CSV/JSON emission. Doubles are written with 17 significant
// digits so repeated runs can be compared byte for byte.

#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mssh/bands.hpp"
#include "mssh/diamond.hpp"
#include "mssh/walk.hpp"

namespace mssh {

inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline void write_bands_csv(std::ostream& out, const BandResult& b) {
  out << "k,e_plus,e_minus,abs_ta,abs_tb\n";
  for (std::size_t i = 0; i < b.k_grid.size(); ++i) {
    out << format_double(b.k_grid[i]) << ',' << format_double(b.e_plus[i]) << ',' << format_double(b.e_minus[i])
        << ',' << format_double(b.abs_ta[i]) << ',' << format_double(b.abs_tb[i]) << '\n';
  }
}

/// Long format: one (t, m, p) row per record and cell.
inline void write_walk_csv(std::ostream& out, const WalkObservables& obs) {
  out << "t,m,p\n";
  for (std::size_t t = 0; t < obs.records(); ++t) {
    for (int m = -obs.half_length; m <= obs.half_length; ++m) {
      out << t << ',' << m << ',' << format_double(obs.p(t, m)) << '\n';
    }
  }
}

inline void write_sweep_csv(std::ostream& out, const std::vector<PhasePoint>& pts) {
  out << "phi_a,phi_b,gap,nu,flag\n";
  for (const auto& p : pts) {
    out << format_double(p.phi_a) << ',' << format_double(p.phi_b) << ',' << format_double(p.gap) << ','
        << (p.nu ? std::to_string(*p.nu) : std::string()) << ',' << p.flag() << '\n';
  }
}

inline nlohmann::json complex_json(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

inline nlohmann::json walk_summary_json(const WalkObservables& obs) {
  return {{"half_length", obs.half_length},
          {"substeps_per_record", obs.substeps_per_record},
          {"max_norm_drift", obs.max_norm_drift},
          {"sigma", obs.sigma},
          {"mean", obs.mean},
          {"p_boundary", obs.p_boundary}};
}

inline nlohmann::json scatter_json(const DiamondScattering& s) {
  return {{"phi", s.phi},
          {"k", s.k},
          {"r", complex_json(s.r_left())},
          {"t", complex_json(s.t())},
          {"abs_t", std::abs(s.t())},
          {"abs_t_closed_form", abs_transmission(s.phi, s.k)}};
}

inline nlohmann::json convention_json(const EdgeConvention& c) {
  return {{"internal_length", c.internal_length},
          {"reference_offset", c.reference_offset},
          {"momentum_offset", c.momentum_offset},
          {"abs_deviation", c.abs_deviation},
          {"complex_deviation", c.complex_deviation}};
}

template <typename Writer>
void write_file(const std::string& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  writer(out);
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

inline void write_json_file(const std::string& path, const nlohmann::json& doc) {
  write_file(path, [&](std::ostream& out) { out << doc.dump(2) << '\n'; });
}

}  // namespace mssh
