#include <random>

#include <gtest/gtest.h>

#include "mssh/diamond.hpp"

using namespace mssh;

namespace {

// At φ = 0 the closed form reduces by hand to t = 8 / (9 e^{-4ik} - 1).
cplx zero_phase_reduced(double k) { return 8.0 / (9.0 * std::exp(-4.0 * I * k) - 1.0); }

bool is_near_singular(double phi, double k) {
  return std::abs(detail::transmission_parts(phi, k).denominator) < 1e-3;
}

}  // namespace

TEST(ClosedForm, VanishesAtPhiPi) {
  for (double k : {0.0, 0.3, 1.0, 2.5, 4.0, 6.1}) EXPECT_LE(std::abs(transmission_closed_form(kPi, k)), 1e-15);
}

TEST(ClosedForm, ZeroPhaseMatchesReducedForm) {
  for (double k : {0.1, 0.37, 1.2, 2.0, 3.3, 5.9}) {
    EXPECT_LE(std::abs(transmission_closed_form(0.0, k) - zero_phase_reduced(k)), 1e-13) << k;
  }
}

TEST(ClosedForm, ZeroPhaseLimitAtOriginIsFullTransmission) {
  EXPECT_LE(std::abs(transmission_closed_form(0.0, 0.0) - 1.0), 1e-9);
  EXPECT_LE(std::abs(transmission_closed_form(0.0, 1e-4) - zero_phase_reduced(1e-4)), 1e-9);
  for (double k : {kPi / 2, kPi, 3 * kPi / 2}) EXPECT_NEAR(std::abs(transmission_closed_form(0.0, k)), 1.0, 1e-9);
}

TEST(ClosedForm, DisabledLimitSignalsSingularPoint) {
  EXPECT_THROW(transmission_closed_form(0.0, 0.0, LimitMode::disabled), SingularPoint);
  EXPECT_NO_THROW(transmission_closed_form(0.4, 0.3, LimitMode::disabled));
}

TEST(ClosedForm, PeriodicInK) {
  for (double phi : {0.3, 1.5, 2.5})
    for (double k : {0.2, 1.1, 3.0})
      EXPECT_NEAR(abs_transmission(phi, k), abs_transmission(phi, k + 2 * kPi), 1e-12);
}

TEST(Solver, PhiPiBlocksTransmission) {
  const auto s = solve_diamond(kPi, 1.0);
  EXPECT_LE(std::abs(s.t()), 1e-12);
  EXPECT_NEAR(std::abs(s.r_left()), 1.0, 1e-12);
}

TEST(Solver, FluxConservedAtZeroPhase) {
  const auto s = solve_diamond(0.0, kPi / 3);
  const Eigen::Matrix2cd gram = s.s_matrix.adjoint() * s.s_matrix - Eigen::Matrix2cd::Identity();
  EXPECT_LE(gram.cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LE(std::abs(std::abs(s.t()) - abs_transmission(0.0, kPi / 3)), 1e-9);
}

TEST(Solver, ReciprocalAndPeriodic) {
  const auto s = solve_diamond(1.3, 0.8);
  EXPECT_LE(std::abs(s.t() - s.t_right_to_left()), 1e-12);
  EXPECT_NEAR(std::abs(s.t()), std::abs(solve_diamond(1.3, 0.8 + 2 * kPi).t()), 1e-12);
}

TEST(Solver, BoundStateIsSingular) { EXPECT_THROW(solve_diamond(0.0, 0.0), SingularSystem); }

TEST(Solver, AgreesWithClosedFormOnGrid) {
  constexpr int n = 32;
  double worst_abs = 0.0, worst_complex = 0.0, worst_unitary = 0.0;
  int used = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double phi = 2 * kPi * (i + 0.5) / n;
      const double k = 2 * kPi * (j + 0.5) / n;
      if (is_near_singular(phi, k)) continue;
      const auto s = solve_diamond(phi, k);
      const cplx closed = transmission_closed_form(phi, k);
      worst_abs = std::max(worst_abs, std::abs(std::abs(s.t()) - std::abs(closed)));
      worst_complex = std::max(worst_complex, std::abs(s.t() - closed));
      const Eigen::Matrix2cd gram = s.s_matrix.adjoint() * s.s_matrix - Eigen::Matrix2cd::Identity();
      worst_unitary = std::max(worst_unitary, gram.cwiseAbs().maxCoeff());
      ++used;
    }
  }
  EXPECT_GT(used, 900);
  EXPECT_LE(worst_abs, 1e-9);
  EXPECT_LE(worst_complex, 1e-9);
  EXPECT_LE(worst_unitary, 1e-10);
}

TEST(Calibration, RecoversFrozenConvention) {
  const auto c = calibrate_edge_convention();
  const auto frozen = default_convention();
  EXPECT_EQ(c.internal_length, frozen.internal_length);
  EXPECT_EQ(c.reference_offset, frozen.reference_offset);
  EXPECT_NEAR(c.momentum_offset, frozen.momentum_offset, 1e-15);
  EXPECT_LE(c.abs_deviation, 1e-9);
  EXPECT_LE(c.complex_deviation, 1e-9);
}

TEST(Calibration, HoldOutPoints) {
  const auto c = calibrate_edge_convention();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(0.0, 2 * kPi);
  int checked = 0;
  while (checked < 10) {
    const double phi = dist(rng), k = dist(rng);
    if (is_near_singular(phi, k)) continue;
    EXPECT_LE(std::abs(std::abs(solve_diamond(phi, k, c).t()) - abs_transmission(phi, k)), 1e-9);
    ++checked;
  }
}

TEST(Calibration, WrongVertexHasNoMatchingConvention) {
  EXPECT_THROW(calibrate_edge_convention(0.0), NoConventionMatches);
}
