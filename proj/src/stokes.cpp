#include "qpol/stokes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qpol {

double wrap_two_pi(double radians) {
  double a = std::fmod(radians, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;  // fmod rounding at the seam
  return a;
}

FieldState FieldState::make(double amplitude, double beta, double alpha_x,
                            double delta) {
  if (!(amplitude > 0.0) || !std::isfinite(amplitude))
    throw std::invalid_argument("FieldState: amplitude must be positive and finite");
  if (!std::isfinite(beta) || !std::isfinite(alpha_x) || !std::isfinite(delta))
    throw std::invalid_argument("FieldState: angles must be finite");
  return {amplitude, wrap_two_pi(beta), alpha_x, wrap_two_pi(delta)};
}

HermitianAnalyzerMatrix HermitianAnalyzerMatrix::make(double a, double d,
                                                      double h, double phi) {
  if (!std::isfinite(a) || !std::isfinite(d) || !std::isfinite(h) ||
      !std::isfinite(phi))
    throw std::invalid_argument("HermitianAnalyzerMatrix: elements must be finite");
  if (h < 0.0)
    throw std::invalid_argument("HermitianAnalyzerMatrix: h must be >= 0");
  return {a, d, h, phi};
}

double EigenstateResiduals::max_abs() const {
  return std::max({std::fabs(r1), std::fabs(r2), std::fabs(r3)});
}

StokesS field_to_stokes(const FieldState& f) {
  const double s0 = f.amplitude * f.amplitude;
  const double two_beta = 2.0 * f.beta;
  const double sin_2b = std::sin(two_beta);
  return {s0, s0 * std::cos(two_beta), s0 * sin_2b * std::cos(f.delta),
          s0 * sin_2b * std::sin(f.delta)};
}

StokesP matrix_to_stokes(const HermitianAnalyzerMatrix& m) {
  const double p0 = std::hypot(m.a - m.d, 2.0 * m.h);
  if (p0 == 0.0) return {0.0, 0.0, 0.0, 0.0};
  // atan2 keeps the quadrant; tan(2 alpha) = 2h / (a - d) alone would not.
  const double two_alpha = std::atan2(2.0 * m.h, m.a - m.d);
  const double sin_2a = std::sin(two_alpha);
  return {p0, p0 * std::cos(two_alpha), p0 * sin_2a * std::cos(m.phi),
          p0 * sin_2a * std::sin(m.phi)};
}

EigenPair eigenvalues(const HermitianAnalyzerMatrix& m) {
  const double mid = 0.5 * (m.a + m.d);
  const double half_gap = 0.5 * std::hypot(m.a - m.d, 2.0 * m.h);
  return {mid + half_gap, mid - half_gap};
}

EigenstateResiduals eigenstate_residuals(const StokesS& s, const StokesP& p,
                                         int branch) {
  if (!(p.p0 > 0.0) || !(s.s0 > 0.0))
    throw std::invalid_argument(
        "eigenstate_residuals: degenerate input (p0 and s0 must be > 0)");
  if (branch != 1 && branch != -1)
    throw std::invalid_argument("eigenstate_residuals: branch must be +1 or -1");
  const double b = static_cast<double>(branch);
  const double r1 = p.p1 * s.s1 + p.p2 * s.s2 + p.p3 * s.s3 - b * p.p0 * s.s0;
  const double r2 = s.s3 * p.p2 - s.s2 * p.p3;
  const double r3 = s.s1 * p.p1 - b * p.p1 * p.p1 * s.s0 / p.p0;
  return {r1, r2, r3};
}

StokesS rotate_stokes(const StokesS& s, double theta, RotationKind kind) {
  const double q = (kind == RotationKind::Vector) ? 2.0 * theta : theta;
  const double c = std::cos(q);
  const double n = std::sin(q);
  return {s.s0, s.s1 * c - s.s2 * n, s.s1 * n + s.s2 * c, s.s3};
}

}  // namespace qpol
