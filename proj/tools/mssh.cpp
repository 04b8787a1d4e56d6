// mssh: command-line front end for the multiport SSH walk simulator.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mssh/mssh.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitInternal = 4;

int exit_code(mssh::ErrorKind kind) {
  switch (kind) {
    case mssh::ErrorKind::config: return kExitConfig;
    case mssh::ErrorKind::numerical: return kExitNumerical;
    case mssh::ErrorKind::invariant: return kExitInternal;
  }
  return kExitInternal;
}

void require_finite(double x, const char* name) {
  if (!std::isfinite(x)) throw mssh::ConfigError(name, "must be finite");
}

// Writes to `path`, or stdout when the path is empty.
template <typename Writer>
void emit(const std::string& path, Writer&& writer) {
  if (path.empty()) {
    writer(std::cout);
  } else {
    mssh::write_file(path, writer);
  }
}

void emit_json(const std::string& path, const nlohmann::json& doc) {
  emit(path, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
}

std::string summary_path_for(const std::string& csv_path) {
  std::filesystem::path p(csv_path);
  p.replace_extension(".json");
  return p.string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum walks on chains of directionally-unbiased three-ports"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  int nk = 512;
  std::optional<int> steps;
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--out", out_path, "output file (or directory for repro)");
  app.add_option("--nk", nk, "number of k-points");
  app.add_option("--steps", steps, "recorded walk steps");

  double phi = 0.0, k = 0.0, theta = mssh::kImaginaryTheta;
  auto* scatter = app.add_subcommand("scatter", "diamond S-matrix at one (phi, k)")->fallthrough();
  scatter->add_option("--phi", phi)->required();
  scatter->add_option("--k", k)->required();
  scatter->add_option("--theta", theta, "vertex phase");

  double phi_a = 0.0, phi_b = 0.0;
  auto* bands = app.add_subcommand("bands", "quasi-energy bands on a uniform k-grid")->fallthrough();
  bands->add_option("--phi-a", phi_a)->required();
  bands->add_option("--phi-b", phi_b)->required();

  auto* winding = app.add_subcommand("winding", "winding number and gap")->fallthrough();
  winding->add_option("--phi-a", phi_a)->required();
  winding->add_option("--phi-b", phi_b)->required();

  int grid = 9;
  double phi_min = 0.0, phi_max = 2 * mssh::kPi;
  auto* sweep = app.add_subcommand("sweep", "gap and winding over a (phi_a, phi_b) grid")->fallthrough();
  sweep->add_option("--grid", grid, "points per axis, uniform on [phi-min, phi-max)")->check(CLI::PositiveNumber);
  sweep->add_option("--phi-min", phi_min);
  sweep->add_option("--phi-max", phi_max);

  std::string summary_path;
  auto* walk = app.add_subcommand("walk", "time-domain walk on a configured chain")->fallthrough();
  walk->add_option("--summary", summary_path, "summary JSON (default: --out with .json extension)");

  std::string figure;
  auto* repro = app.add_subcommand("repro", "regenerate band or walk reproduction data")->fallthrough();
  repro->add_option("figure", figure)->required()->check(CLI::IsMember({"fig4", "fig5"}));

  auto* calibrate = app.add_subcommand("calibrate", "search the internal edge convention")->fallthrough();
  calibrate->add_option("--theta", theta, "vertex phase");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*scatter) {
      require_finite(phi, "phi");
      require_finite(k, "k");
      require_finite(theta, "theta");
      emit_json(out_path, mssh::scatter_json(mssh::solve_diamond(phi, k, mssh::default_convention(), theta)));
    } else if (*bands) {
      require_finite(phi_a, "phi_a");
      require_finite(phi_b, "phi_b");
      if (nk < 16) throw mssh::ConfigError("nk", "must be >= 16");
      const auto res = mssh::band_structure(phi_a, phi_b, nk);
      emit(out_path, [&](std::ostream& os) { mssh::write_bands_csv(os, res); });
    } else if (*winding) {
      require_finite(phi_a, "phi_a");
      require_finite(phi_b, "phi_b");
      const int n = app.count("--nk") ? nk : 1024;
      if (n < 64) throw mssh::ConfigError("nk", "must be >= 64");
      const auto w = mssh::winding_number(phi_a, phi_b, n);
      const auto b = mssh::band_structure(phi_a, phi_b, n);
      emit_json(out_path, {{"nu", w.nu}, {"min_radius", w.min_radius}, {"gap", b.gap}});
    } else if (*sweep) {
      require_finite(phi_min, "phi_min");
      require_finite(phi_max, "phi_max");
      const int n = app.count("--nk") ? nk : 256;
      if (n < 64) throw mssh::ConfigError("nk", "must be >= 64");
      std::vector<double> axis(grid);
      for (int i = 0; i < grid; ++i) axis[i] = phi_min + (phi_max - phi_min) * i / grid;
      const auto pts = mssh::phase_diagram(axis, axis, n);
      emit(out_path, [&](std::ostream& os) { mssh::write_sweep_csv(os, pts); });
    } else if (*walk) {
      if (config_path.empty()) throw mssh::ConfigError("config", "walk requires --config");
      auto cfg = mssh::load_config(config_path);
      if (steps) {
        if (*steps < 0) throw mssh::ConfigError("steps", "must be >= 0");
        cfg.walk.n_record = *steps;
      }
      const auto obs = mssh::run_walk(cfg.walk);
      emit(out_path, [&](std::ostream& os) { mssh::write_walk_csv(os, obs); });
      const std::string summary = !summary_path.empty() ? summary_path
                                  : out_path.empty()    ? std::string()
                                                        : summary_path_for(out_path);
      if (summary.empty()) {
        std::cerr << mssh::walk_summary_json(obs).dump(2) << '\n';
      } else {
        mssh::write_json_file(summary, mssh::walk_summary_json(obs));
      }
    } else if (*repro) {
      const std::string dir = out_path.empty() ? std::string("repro_out") : out_path;
      const auto fig = figure == "fig4" ? mssh::Figure::bands : mssh::Figure::walks;
      const auto files = mssh::run_reproduction(fig, dir, nk, steps.value_or(200));
      for (const auto& f : files) std::cout << f << '\n';
    } else if (*calibrate) {
      require_finite(theta, "theta");
      emit_json(out_path, mssh::convention_json(mssh::calibrate_edge_convention(theta)));
    }
  } catch (const mssh::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}
