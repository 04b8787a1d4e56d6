#pragma once

// Two-port scattering of a diamond graph: two three-ports joined by two
// internal edges, one of which carries a reciprocal phase shifter φ.
//
// Two independent routes are provided. transmission_closed_form evaluates
// the rational expression in e^{-iφ} and e^{-4ik}; solve_diamond solves the
// stationary scattering problem on the graph. calibrate_edge_convention finds
// the internal edge length and momentum/reference-plane offsets under which
// the two routes agree.

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mssh/errors.hpp"
#include "mssh/multiport.hpp"

namespace mssh {

enum class LimitMode { symmetric, disabled };

namespace detail {

struct RationalParts {
  cplx numerator;
  cplx denominator;
};

inline RationalParts transmission_parts(double phi, double k) {
  const cplx w = std::exp(-I * phi);
  const cplx z = std::exp(-4.0 * I * k);
  const cplx one_plus_w = 1.0 + w;
  const cplx loop = 3.0 * w * z - 1.0;
  return {4.0 * one_plus_w * (1.0 - w * z), z * one_plus_w * one_plus_w - loop * loop};
}

inline constexpr double kRemovableThreshold = 1e-9;
inline constexpr double kLimitStep = 1e-6;

}  // namespace detail

/// Diamond transmission amplitude
///   t(φ,k) = 4(1+e^{-iφ})(1-e^{-i(φ+4k)}) / (e^{-4ik}(1+e^{-iφ})² - (3e^{-i(φ+4k)}-1)²).
/// Where numerator and denominator both vanish (bound-state points such as
/// φ = 0, k ∈ {0, π/2, π, 3π/2}) the symmetric limit over k ± 1e-6 is
/// returned, or SingularPoint is thrown when `mode` is disabled.
inline cplx transmission_closed_form(double phi, double k, LimitMode mode = LimitMode::symmetric) {
  const auto parts = detail::transmission_parts(phi, k);
  if (std::abs(parts.denominator) >= detail::kRemovableThreshold) return parts.numerator / parts.denominator;
  if (mode == LimitMode::disabled) {
    throw SingularPoint("removable singularity of the diamond transmission at phi=" + std::to_string(phi) +
                        ", k=" + std::to_string(k));
  }
  const auto lo = detail::transmission_parts(phi, k - detail::kLimitStep);
  const auto hi = detail::transmission_parts(phi, k + detail::kLimitStep);
  return 0.5 * (lo.numerator / lo.denominator + hi.numerator / hi.denominator);
}

inline double abs_transmission(double phi, double k) { return std::abs(transmission_closed_form(phi, k)); }

/// Geometry under which the graph solver reproduces the closed form.
///
/// internal_length: sub-steps per internal edge. momentum_offset: the solver
/// runs at sub-step wavenumber κ = k - momentum_offset; this absorbs the
/// global phase a complex-valued vertex contributes on every scattering
/// event. reference_offset: the S-matrix is multiplied by e^{i·offset·κ}
/// (lead reference planes).
struct EdgeConvention {
  int internal_length = 2;
  int reference_offset = 2;
  double momentum_offset = kPi / 4;
  double abs_deviation = 0.0;
  double complex_deviation = 0.0;
};

/// Result of calibrating with θ = -π/2 vertices. Frozen here so that
/// configuration defaults do not need to rerun the calibration search.
inline EdgeConvention default_convention() { return {}; }

struct DiamondScattering {
  double phi = 0.0;
  double k = 0.0;
  // Columns: incident from left, incident from right.
  // [[r_L, t'], [t, r_R]]
  Eigen::Matrix2cd s_matrix;
  int internal_length = 2;

  cplx r_left() const { return s_matrix(0, 0); }
  cplx t_right_to_left() const { return s_matrix(0, 1); }
  cplx t() const { return s_matrix(1, 0); }
  cplx r_right() const { return s_matrix(1, 1); }
};

/// Stationary scattering on the two-vertex graph. Unknowns are the amplitudes
/// leaving each vertex through its internal ports 1 (phase-shifted edge) and
/// 2 (plain edge). Throws SingularSystem when the 4x4 system is
/// rank-deficient, i.e. a bound state sits at this (φ, κ).
inline DiamondScattering solve_diamond(double phi, double k, const EdgeConvention& conv = default_convention(),
                                       double theta = kImaginaryTheta) {
  const Eigen::Matrix3cd u = vertex_unitary(theta).matrix;
  const double kappa = k - conv.momentum_offset;
  const cplx plain = std::exp(I * kappa * double(conv.internal_length));
  const cplx shifted = plain * std::exp(I * phi);
  const std::array<cplx, 3> edge{cplx{0.0}, shifted, plain};

  // x = [out_L1, out_L2, out_R1, out_R2]; rhs columns = unit incidence from L, R.
  Eigen::Matrix4cd a = Eigen::Matrix4cd::Identity();
  Eigen::Matrix<cplx, 4, 2> rhs = Eigen::Matrix<cplx, 4, 2>::Zero();
  for (int q = 1; q <= 2; ++q) {
    const int left_row = q - 1;
    const int right_row = q + 1;
    for (int p = 1; p <= 2; ++p) {
      a(left_row, p + 1) -= u(q, p) * edge[p];
      a(right_row, p - 1) -= u(q, p) * edge[p];
    }
    rhs(left_row, 0) = u(q, 0);
    rhs(right_row, 1) = u(q, 0);
  }

  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(a);
  const auto& sv = svd.singularValues();
  if (sv(3) < 1e-10 * sv(0)) {
    throw SingularSystem("diamond scattering system is rank-deficient at phi=" + std::to_string(phi) +
                         ", k=" + std::to_string(k));
  }
  const Eigen::Matrix<cplx, 4, 2> x = a.fullPivLu().solve(rhs);

  DiamondScattering out;
  out.phi = phi;
  out.k = k;
  out.internal_length = conv.internal_length;
  for (int col = 0; col < 2; ++col) {
    const cplx into_left = col == 0 ? cplx{1.0} : cplx{0.0};
    const cplx into_right = col == 1 ? cplx{1.0} : cplx{0.0};
    const cplx left_exit = u(0, 0) * into_left + u(0, 1) * edge[1] * x(2, col) + u(0, 2) * edge[2] * x(3, col);
    const cplx right_exit = u(0, 0) * into_right + u(0, 1) * edge[1] * x(0, col) + u(0, 2) * edge[2] * x(1, col);
    out.s_matrix(0, col) = left_exit;
    out.s_matrix(1, col) = right_exit;
  }
  out.s_matrix *= std::exp(I * kappa * double(conv.reference_offset));
  return out;
}

namespace detail {

struct GridPoint {
  double phi;
  double k;
  cplx closed;
};

inline bool near_removable(double phi, double k, double radius) {
  return std::abs(transmission_parts(phi, k).denominator) < radius;
}

inline std::vector<GridPoint> calibration_grid() {
  std::vector<GridPoint> grid;
  constexpr int n_phi = 8;
  constexpr int n_k = 24;
  for (int i = 0; i < n_phi; ++i) {
    for (int j = 0; j < n_k; ++j) {
      const double phi = 2 * kPi * (i + 0.37) / n_phi;
      const double k = 2 * kPi * (j + 0.21) / n_k;
      if (near_removable(phi, k, 1e-3)) continue;
      grid.push_back({phi, k, transmission_closed_form(phi, k)});
    }
  }
  return grid;
}

// Max deviation over the grid; infinity if the solver is singular anywhere.
inline std::pair<double, double> convention_deviation(const std::vector<GridPoint>& grid, const EdgeConvention& conv,
                                                      double theta) {
  double abs_dev = 0.0;
  double complex_dev = 0.0;
  for (const auto& pt : grid) {
    try {
      const cplx t = solve_diamond(pt.phi, pt.k, conv, theta).t();
      abs_dev = std::max(abs_dev, std::abs(std::abs(t) - std::abs(pt.closed)));
      complex_dev = std::max(complex_dev, std::abs(t - pt.closed));
    } catch (const SingularSystem&) {
      return {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    }
  }
  return {abs_dev, complex_dev};
}

}  // namespace detail

inline constexpr double kConventionMatchTolerance = 1e-6;

/// Searches internal edge lengths 1..4, momentum offsets jπ/8 (j = 0..15) and
/// reference-plane offsets 0..length for the convention under which the
/// solver's |t| agrees with the closed form. Among |t|-equivalent candidates
/// the smallest length, then the smallest momentum offset wins; the reference
/// offset is then picked to minimise the complex mismatch.
inline EdgeConvention calibrate_edge_convention(double theta = kImaginaryTheta) {
  const auto grid = detail::calibration_grid();
  std::optional<EdgeConvention> best;
  for (int length = 1; length <= 4; ++length) {
    for (int j = 0; j < 16; ++j) {
      EdgeConvention conv;
      conv.internal_length = length;
      conv.momentum_offset = j * kPi / 8;
      conv.reference_offset = 0;
      const auto [abs_dev, complex_dev] = detail::convention_deviation(grid, conv, theta);
      conv.abs_deviation = abs_dev;
      conv.complex_deviation = complex_dev;
      if (!best || abs_dev < best->abs_deviation - 1e-12) best = conv;
    }
  }
  if (!best || !(best->abs_deviation <= kConventionMatchTolerance)) {
    throw NoConventionMatches("no internal edge convention reproduces the closed-form |t| (best deviation " +
                              std::to_string(best ? best->abs_deviation : -1.0) + ")");
  }
  EdgeConvention chosen = *best;
  for (int offset = 0; offset <= chosen.internal_length; ++offset) {
    EdgeConvention trial = chosen;
    trial.reference_offset = offset;
    const auto [abs_dev, complex_dev] = detail::convention_deviation(grid, trial, theta);
    if (offset == 0 || complex_dev < chosen.complex_deviation - 1e-12) {
      trial.abs_deviation = abs_dev;
      trial.complex_deviation = complex_dev;
      chosen = trial;
    }
  }
  return chosen;
}

}  // namespace mssh
