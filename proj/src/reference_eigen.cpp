#include "qpol/reference_eigen.hpp"

#include <cmath>
#include <stdexcept>

namespace qpol {

namespace {

// det(H - lambda I) for the Hermitian matrix; real because |h12|^2 = h^2.
double char_poly(const HermitianAnalyzerMatrix& m, double lambda) {
  return (m.a - lambda) * (m.d - lambda) - m.h * m.h;
}

// One root of the characteristic polynomial inside [lo, hi], where the
// polynomial is >= 0 at the outer end and <= 0 at the vertex.
double bisect_root(const HermitianAnalyzerMatrix& m, double lo, double hi,
                   bool descending) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double f = char_poly(m, mid);
    const bool go_right = descending ? (f > 0.0) : (f <= 0.0);
    if (go_right)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::complex<double> normalize2(std::complex<double>& x, std::complex<double>& y) {
  const double n = std::sqrt(std::norm(x) + std::norm(y));
  x /= n;
  y /= n;
  return n;
}

void eigenvector_for(const HermitianAnalyzerMatrix& m, double lambda,
                     std::complex<double> out[2]) {
  const std::complex<double> h12 = m.h * std::exp(std::complex<double>(0.0, -m.phi));
  // Solve (H - lambda I) v = 0 from whichever row is better conditioned.
  const double row1 = std::fabs(m.a - lambda) + m.h;
  const double row2 = std::fabs(m.d - lambda) + m.h;
  if (row1 >= row2 && row1 > 0.0) {
    out[0] = h12;
    out[1] = std::complex<double>(lambda - m.a, 0.0);
  } else if (row2 > 0.0) {
    out[0] = std::complex<double>(lambda - m.d, 0.0);
    out[1] = std::conj(h12);
  } else {
    out[0] = 1.0;  // fully degenerate matrix: any direction is an eigenvector
    out[1] = 0.0;
  }
  if (std::norm(out[0]) + std::norm(out[1]) == 0.0) {
    out[0] = 1.0;
    out[1] = 0.0;
  }
  normalize2(out[0], out[1]);
}

}  // namespace

ReferenceEigen reference_eigen_2x2(const HermitianAnalyzerMatrix& m) {
  // Both roots lie within the Gershgorin radius.
  const double r = std::fabs(m.a) + std::fabs(m.d) + 2.0 * m.h + 1.0;
  const double vertex = 0.5 * (m.a + m.d);  // minimum of the upward parabola

  ReferenceEigen out;
  out.lambda_minus = bisect_root(m, -r, vertex, /*descending=*/true);
  out.lambda_plus = bisect_root(m, vertex, r, /*descending=*/false);
  eigenvector_for(m, out.lambda_minus, out.vec_minus);
  eigenvector_for(m, out.lambda_plus, out.vec_plus);

  // Orthogonalize the degenerate case so the two vectors always differ.
  const std::complex<double> overlap = std::conj(out.vec_plus[0]) * out.vec_minus[0] +
                                       std::conj(out.vec_plus[1]) * out.vec_minus[1];
  if (std::abs(overlap) > 0.5) {
    out.vec_minus[0] = -std::conj(out.vec_plus[1]);
    out.vec_minus[1] = std::conj(out.vec_plus[0]);
  }
  return out;
}

StokesS stokes_from_components(std::complex<double> psi_x,
                               std::complex<double> psi_y) {
  const double ax2 = std::norm(psi_x);
  const double ay2 = std::norm(psi_y);
  const std::complex<double> cross = std::conj(psi_x) * psi_y;
  return {ax2 + ay2, ax2 - ay2, 2.0 * cross.real(), 2.0 * cross.imag()};
}

FieldState field_state_from_components(std::complex<double> psi_x,
                                       std::complex<double> psi_y) {
  const double ax = std::abs(psi_x);
  const double ay = std::abs(psi_y);
  const double amplitude = std::sqrt(ax * ax + ay * ay);
  if (!(amplitude > 0.0))
    throw std::invalid_argument("field_state_from_components: zero field");
  const double beta = std::atan2(ay, ax);
  const double alpha_x = ax > 0.0 ? std::arg(psi_x) : 0.0;
  const double delta = (ax > 0.0 && ay > 0.0) ? std::arg(psi_y) - std::arg(psi_x) : 0.0;
  return FieldState::make(amplitude, beta, alpha_x, delta);
}

}  // namespace qpol
