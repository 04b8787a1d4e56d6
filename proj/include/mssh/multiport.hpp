#pragma once

// Scattering matrices of directionally-unbiased optical three-ports.
//
// Ports are indexed A, B, C -> 0, 1, 2. The lattice builder wires port 0 to
// the external lead of a diamond and ports 1, 2 to its two internal edges.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace mssh {

using cplx = std::complex<double>;
inline constexpr cplx I{0.0, 1.0};
inline constexpr double kPi = std::numbers::pi;

enum Port : int { port_a = 0, port_b = 1, port_c = 2 };

/// Total mirror-unit phase that makes every transition amplitude purely
/// imaginary; the lattice default.
inline constexpr double kImaginaryTheta = -kPi / 2;
/// Phase at which all nine exit probabilities are equal.
inline constexpr double kStrictlyUnbiasedTheta = kPi / 6;

struct VertexUnitary {
  double theta = kImaginaryTheta;
  Eigen::Matrix3cd matrix;  // matrix(out, in)

  cplx reflection() const { return matrix(0, 0); }
  cplx transmission() const { return matrix(1, 0); }
};

/// Three-port unitary for equal internal phase `theta` at all mirror units:
///   e^{iθ}/(2 + i e^{iθ}) * [1 on the diagonal, i e^{-iθ} - 1 off it].
inline VertexUnitary vertex_unitary(double theta) {
  const cplx prefactor = std::exp(I * theta) / (2.0 + I * std::exp(I * theta));
  const cplx diag = prefactor;
  const cplx off = prefactor * (I * std::exp(-I * theta) - 1.0);
  VertexUnitary u;
  u.theta = theta;
  u.matrix.setConstant(off);
  u.matrix.diagonal().setConstant(diag);
  return u;
}

inline double unitarity_defect(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("unitarity check requires a square matrix");
  const Eigen::MatrixXcd gram = m.adjoint() * m - Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  return gram.cwiseAbs().maxCoeff();
}

/// True iff max_ij |(U†U - I)_ij| <= tol. Throws std::invalid_argument on
/// non-square input.
inline bool check_unitary(const Eigen::MatrixXcd& m, double tol = 1e-12) {
  return unitarity_defect(m) <= tol;
}

}  // namespace mssh
