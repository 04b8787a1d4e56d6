#pragma once

// Regenerates plot-ready data for the band-structure panels and the two
// walk experiments (interface vs. uniform chain).

#include <filesystem>
#include <string>
#include <vector>

#include "mssh/bands.hpp"
#include "mssh/output.hpp"
#include "mssh/walk.hpp"

namespace mssh {

enum class Figure { bands, walks };

struct BandPanel {
  const char* name;
  double phi_a;
  double phi_b;
};

// Gap closed -> barely open -> open -> maximal (|Δφ| = π).
inline const std::vector<BandPanel>& band_panels() {
  static const std::vector<BandPanel> panels{{"a", 0.0, 0.0}, {"b", 0.0, 0.5}, {"c", 0.0, 2.0}, {"d", 0.0, kPi}};
  return panels;
}

/// Interface chain: (1.5, 2.5) for m <= 0 joined to (3π/4, 0) for m >= 1,
/// photon injected right-moving at subsite a of cell 0.
inline WalkConfig interface_walk(int n_record = 200) {
  WalkConfig cfg;
  cfg.profile = PhaseProfile::interface(0, {1.5, 2.5}, {3 * kPi / 4, 0.0});
  cfg.n_record = n_record;
  return cfg;
}

inline WalkConfig uniform_walk(int n_record = 200) {
  WalkConfig cfg;
  cfg.profile = PhaseProfile::uniform(0.0, 0.0);
  cfg.n_record = n_record;
  return cfg;
}

inline std::vector<std::string> run_reproduction(Figure fig, const std::filesystem::path& out_dir, int n_k = 512,
                                                 int steps = 200) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::string> written;
  if (fig == Figure::bands) {
    nlohmann::json panels = nlohmann::json::array();
    for (const auto& p : band_panels()) {
      const auto bands = band_structure(p.phi_a, p.phi_b, n_k);
      const auto path = (out_dir / ("fig4_bands_" + std::string(p.name) + ".csv")).string();
      write_file(path, [&](std::ostream& os) { write_bands_csv(os, bands); });
      written.push_back(path);
      panels.push_back({{"panel", p.name}, {"phi_a", p.phi_a}, {"phi_b", p.phi_b}, {"gap", bands.gap},
                        {"gap_k", bands.gap_k}, {"file", "fig4_bands_" + std::string(p.name) + ".csv"}});
    }
    const auto path = (out_dir / "fig4_summary.json").string();
    write_json_file(path, {{"nk", n_k}, {"panels", panels}});
    written.push_back(path);
    return written;
  }

  const auto boundary = run_walk(interface_walk(steps));
  const auto uniform = run_walk(uniform_walk(steps));
  for (const auto& [name, obs] : {std::pair{"boundary", &boundary}, std::pair{"uniform", &uniform}}) {
    const auto path = (out_dir / ("fig5_walk_" + std::string(name) + ".csv")).string();
    write_file(path, [&, o = obs](std::ostream& os) { write_walk_csv(os, *o); });
    written.push_back(path);
  }
  const auto path = (out_dir / "fig5_summary.json").string();
  write_json_file(path, {{"steps", steps},
                         {"boundary", walk_summary_json(boundary)},
                         {"uniform", walk_summary_json(uniform)}});
  written.push_back(path);
  return written;
}

}  // namespace mssh
