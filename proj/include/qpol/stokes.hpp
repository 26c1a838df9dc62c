#pragma once

namespace qpol {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kHalfPi = 0.5 * kPi;

constexpr double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
constexpr double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

/// Reduce an angle to [0, 2*pi).
double wrap_two_pi(double radians);

/// Two-component field pulse: amplitude, mixing angle and phases of
/// Psi = A (cos(beta) e^{i alpha_x}, sin(beta) e^{i (alpha_x + delta)}).
/// This is the photon's hidden state.
struct FieldState {
  double amplitude = 1.0;  ///< A > 0, arbitrary field units
  double beta = 0.0;       ///< polarization mixing angle, stored in [0, 2pi)
  double alpha_x = 0.0;    ///< global phase of the x component
  double delta = 0.0;      ///< relative phase, stored in [0, 2pi)

  /// Validates the amplitude and wraps both periodic angles.
  static FieldState make(double amplitude, double beta, double alpha_x = 0.0,
                         double delta = 0.0);
};

/// Stokes 4-vector of a field state: a point on the field Poincare sphere.
/// Pure states satisfy s1^2 + s2^2 + s3^2 = s0^2.
struct StokesS {
  double s0 = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;
};

/// 2x2 Hermitian analyzer matrix with diagonal (a, d) and off-diagonal
/// h * exp(-i phi), h >= 0.
struct HermitianAnalyzerMatrix {
  double a = 0.0;
  double d = 0.0;
  double h = 0.0;
  double phi = 0.0;

  static HermitianAnalyzerMatrix make(double a, double d, double h, double phi);
};

/// Stokes 4-vector of an analyzer matrix: a point on the matrix Poincare
/// sphere. p0 equals the eigenvalue gap of the matrix.
struct StokesP {
  double p0 = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;
};

struct EigenPair {
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
};

/// Residuals of the three eigenstate relations between a field Stokes
/// vector and a matrix Stokes vector. All three vanish exactly when
/// (s, p, branch) describes an eigenstate of the matrix behind p.
struct EigenstateResiduals {
  double r1 = 0.0;  ///< P.S - branch * p0 * s0 (spatial dot product)
  double r2 = 0.0;  ///< s3 p2 - s2 p3
  double r3 = 0.0;  ///< s1 p1 - branch * p1^2 * s0 / p0

  double max_abs() const;
};

/// Physical rotations move Stokes coordinates by theta for spinor fields
/// and by 2*theta for vector fields.
enum class RotationKind { Spinor, Vector };

StokesS field_to_stokes(const FieldState& f);

/// Degenerate matrices (a = d, h = 0) map to the zero vector: they have no
/// eigen-direction, and consumers reject p0 = 0.
StokesP matrix_to_stokes(const HermitianAnalyzerMatrix& m);

EigenPair eigenvalues(const HermitianAnalyzerMatrix& m);

/// branch must be +1 or -1; throws on degenerate p0 = 0 or s0 = 0.
EigenstateResiduals eigenstate_residuals(const StokesS& s, const StokesP& p,
                                         int branch);

/// Rotate the equatorial components (s1, s2) by the Poincare-sphere image
/// of a physical rotation theta; s0 and s3 are untouched.
StokesS rotate_stokes(const StokesS& s, double theta, RotationKind kind);

}  // namespace qpol
