#pragma once

// Momentum-space layer: the chiral two-band Hamiltonian with k-dependent
// hoppings v = |t_a(k)| (intracell) and w = |t_b(k)| (intercell), its
// quasi-energy bands, the band gap, and the winding number of
// d(k) = (v + w cos k, w sin k). The d_0 and d_z components vanish
// identically and are not stored.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mssh/diamond.hpp"
#include "mssh/errors.hpp"

namespace mssh {

struct Hoppings {
  double intra = 0.0;  // |t_a|
  double inter = 0.0;  // |t_b|
};

using HoppingModel = std::function<Hoppings(double k)>;

inline HoppingModel diamond_hoppings(double phi_a, double phi_b) {
  return [phi_a, phi_b](double k) { return Hoppings{abs_transmission(phi_a, k), abs_transmission(phi_b, k)}; };
}

inline HoppingModel constant_hoppings(double intra, double inter) {
  return [intra, inter](double) { return Hoppings{intra, inter}; };
}

inline Eigen::Matrix2cd hamiltonian_from_hoppings(const Hoppings& h, double k) {
  Eigen::Matrix2cd m;
  const cplx off = h.intra + h.inter * std::exp(-I * k);
  m << 0.0, off, std::conj(off), 0.0;
  return m;
}

/// [[0, |t_a| + |t_b| e^{-ik}], [|t_a| + |t_b| e^{ik}, 0]]; the 1/N
/// normalisation is dropped.
inline Eigen::Matrix2cd hamiltonian_k(double phi_a, double phi_b, double k) {
  return hamiltonian_from_hoppings({abs_transmission(phi_a, k), abs_transmission(phi_b, k)}, k);
}

/// E_+(k) = sqrt(v² + w² + 2vw cos k); E_- = -E_+.
inline double upper_band(const Hoppings& h, double k) {
  return std::sqrt(std::max(0.0, h.intra * h.intra + h.inter * h.inter + 2.0 * h.intra * h.inter * std::cos(k)));
}

struct BandResult {
  std::vector<double> k_grid;
  std::vector<double> e_plus;
  std::vector<double> e_minus;
  std::vector<double> abs_ta;
  std::vector<double> abs_tb;
  double gap = 0.0;
  double gap_k = 0.0;  // location of the refined gap minimum
};

namespace detail {

// Golden-section minimisation of f on [lo, hi].
inline std::pair<double, double> golden_minimum(const std::function<double(double)>& f, double lo, double hi,
                                                double tol) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

inline std::vector<double> uniform_k_grid(int n_k) {
  std::vector<double> ks(n_k);
  for (int i = 0; i < n_k; ++i) ks[i] = 2.0 * kPi * i / n_k;
  return ks;
}

}  // namespace detail

inline constexpr double kGapRefineTolerance = 1e-10;

inline BandResult band_structure(const HoppingModel& model, int n_k) {
  if (n_k < 16) throw std::invalid_argument("band_structure needs n_k >= 16");
  BandResult res;
  res.k_grid = detail::uniform_k_grid(n_k);
  std::size_t argmin = 0;
  for (std::size_t i = 0; i < res.k_grid.size(); ++i) {
    const double k = res.k_grid[i];
    const Hoppings h = model(k);
    const double e = upper_band(h, k);
    res.e_plus.push_back(e);
    res.e_minus.push_back(-e);
    res.abs_ta.push_back(h.intra);
    res.abs_tb.push_back(h.inter);
    if (e < res.e_plus[argmin]) argmin = i;
  }
  const double dk = 2.0 * kPi / n_k;
  const double k0 = res.k_grid[argmin];
  auto gap_at = [&model](double k) { return 2.0 * upper_band(model(k), k); };
  const auto [k_best, g_best] = detail::golden_minimum(gap_at, k0 - dk, k0 + dk, kGapRefineTolerance);
  res.gap = 2.0 * res.e_plus[argmin];
  res.gap_k = k0;
  if (g_best < res.gap) {
    res.gap = g_best;
    res.gap_k = std::fmod(k_best + 2.0 * kPi, 2.0 * kPi);
  }
  return res;
}

inline BandResult band_structure(double phi_a, double phi_b, int n_k) {
  return band_structure(diamond_hoppings(phi_a, phi_b), n_k);
}

struct WindingResult {
  std::vector<std::pair<double, double>> d_curve;  // (d_x, d_y) on the k-grid
  int nu = 0;
  double min_radius = 0.0;
  double raw = 0.0;  // accumulated angle / 2π before rounding
};

inline constexpr double kWindingRadiusTolerance = 1e-6;
inline constexpr double kWindingIntegerTolerance = 0.1;

/// ν by accumulating wrapped angle increments of d(k) around the closed
/// k-grid. Throws GapClosed if d comes within 1e-6 of the origin or the sum
/// is not within 0.1 of an integer.
inline WindingResult winding_number(const HoppingModel& model, int n_k) {
  if (n_k < 64) throw std::invalid_argument("winding_number needs n_k >= 64");
  WindingResult res;
  const auto ks = detail::uniform_k_grid(n_k);
  res.d_curve.reserve(ks.size());
  res.min_radius = std::numeric_limits<double>::infinity();
  for (double k : ks) {
    const Hoppings h = model(k);
    const double dx = h.intra + h.inter * std::cos(k);
    const double dy = h.inter * std::sin(k);
    res.d_curve.emplace_back(dx, dy);
    res.min_radius = std::min(res.min_radius, std::hypot(dx, dy));
  }
  if (res.min_radius < kWindingRadiusTolerance) {
    throw GapClosed("d(k) passes within " + std::to_string(res.min_radius) + " of the origin; winding undefined");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < res.d_curve.size(); ++i) {
    const auto& [x0, y0] = res.d_curve[i];
    const auto& [x1, y1] = res.d_curve[(i + 1) % res.d_curve.size()];
    // arg(d1 / d0), already in (-π, π]
    total += std::atan2(x0 * y1 - y0 * x1, x0 * x1 + y0 * y1);
  }
  res.raw = total / (2.0 * kPi);
  res.nu = static_cast<int>(std::lround(res.raw));
  if (std::abs(res.raw - res.nu) > kWindingIntegerTolerance) {
    throw GapClosed("accumulated winding " + std::to_string(res.raw) + " is not near an integer; refine n_k");
  }
  return res;
}

inline WindingResult winding_number(double phi_a, double phi_b, int n_k = 1024) {
  return winding_number(diamond_hoppings(phi_a, phi_b), n_k);
}

struct PhasePoint {
  double phi_a = 0.0;
  double phi_b = 0.0;
  double gap = 0.0;
  std::optional<int> nu;  // empty when the gap is closed
  double min_radius = 0.0;

  bool gap_closed() const { return !nu.has_value(); }
  const char* flag() const { return gap_closed() ? "gap_closed" : "ok"; }
};

inline PhasePoint phase_point(double phi_a, double phi_b, int n_k) {
  PhasePoint pt;
  pt.phi_a = phi_a;
  pt.phi_b = phi_b;
  pt.gap = band_structure(phi_a, phi_b, n_k).gap;
  try {
    const auto w = winding_number(phi_a, phi_b, n_k);
    pt.nu = w.nu;
    pt.min_radius = w.min_radius;
  } catch (const GapClosed&) {
    pt.nu.reset();
  }
  return pt;
}

/// Row-major grid: result[i * phi_b.size() + j] is (phi_a[i], phi_b[j]).
/// Points are independent and computed on a small worker pool.
inline std::vector<PhasePoint> phase_diagram(const std::vector<double>& phi_a_grid,
                                             const std::vector<double>& phi_b_grid, int n_k) {
  if (phi_a_grid.empty() || phi_b_grid.empty()) throw std::invalid_argument("phase_diagram grids must be nonempty");
  const std::size_t nb = phi_b_grid.size();
  const std::size_t total = phi_a_grid.size() * nb;
  std::vector<PhasePoint> out(total);
  const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 8);
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t idx = w; idx < total; idx += workers) {
          out[idx] = phase_point(phi_a_grid[idx / nb], phi_b_grid[idx % nb], n_k);
        }
      });
    }
  }
  return out;
}

}  // namespace mssh
