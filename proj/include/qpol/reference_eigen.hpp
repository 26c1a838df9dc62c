#pragma once

#include <complex>

#include "qpol/stokes.hpp"

namespace qpol {

/// Eigen decomposition of a 2x2 Hermitian matrix obtained the slow way:
/// eigenvalues by bisection on the characteristic polynomial, eigenvectors
/// from the matrix rows in complex arithmetic. Deliberately avoids the
/// closed-form spectral formulas so it can cross-check them.
struct ReferenceEigen {
  double lambda_minus = 0.0;
  double lambda_plus = 0.0;
  std::complex<double> vec_minus[2];  ///< unit eigenvector for lambda_minus
  std::complex<double> vec_plus[2];   ///< unit eigenvector for lambda_plus
};

ReferenceEigen reference_eigen_2x2(const HermitianAnalyzerMatrix& m);

/// Stokes vector of a two-component complex field straight from the
/// quadratic forms, with no angle extraction in between.
StokesS stokes_from_components(std::complex<double> psi_x,
                               std::complex<double> psi_y);

/// Recover (A, beta, alpha_x, delta) from complex field components.
/// Throws if both components vanish.
FieldState field_state_from_components(std::complex<double> psi_x,
                                       std::complex<double> psi_y);

}  // namespace qpol
