#pragma once

#include "qpol/rng.hpp"
#include "qpol/stokes.hpp"

namespace qpol {

/// Distribution of the per-photon orientation draw inside an analyzer.
struct SamplingDistribution {
  enum class Kind { ArccosUniform, Gaussian };

  Kind kind = Kind::ArccosUniform;
  double sigma = 0.0;  ///< Gaussian width in radians; ignored for ArccosUniform

  static SamplingDistribution arccos_uniform() {
    return {Kind::ArccosUniform, 0.0};
  }
  static SamplingDistribution gaussian(double sigma);
  /// Gaussian at the default width, kDefaultGaussianSigma.
  static SamplingDistribution gaussian();
};

/// Default Gaussian width: matches the mean absolute deviation of the
/// arccos rule, whose density is cos(a)/2 on [-pi/2, pi/2] with
/// E|a| = pi/2 - 1. A Gaussian has E|X| = sigma * sqrt(2/pi), so
/// sigma = (pi/2 - 1) * sqrt(pi/2) ~ 0.7154 rad.
double default_gaussian_sigma();

enum class Channel { Plus = 1, Minus = -1 };

/// Channel decision rule: the sign test on T(0), or the probabilistic
/// control model used for ablation runs.
enum class Criterion { Deterministic, MalusProbabilistic };

/// A quasi-deterministic two-channel analyzer. Immutable; shareable
/// across threads.
struct Analyzer {
  double theta = 0.0;  ///< physical orientation relative to the lab frame
  double p0 = 1.0;     ///< spectral gap scale, > 0
  int phi_sign = 1;    ///< cos(phi) = +-1 for a linear analyzer
  SamplingDistribution distribution{};
  Criterion criterion = Criterion::Deterministic;
  RotationKind kind = RotationKind::Vector;

  static Analyzer make(double theta, double p0, int phi_sign,
                       SamplingDistribution distribution, Criterion criterion,
                       RotationKind kind);
};

/// Result of one photon passage through an analyzer.
struct ChannelOutcome {
  Channel channel = Channel::Plus;
  StokesS post_state{};    ///< collapsed eigenstate in the evaluation frame
  double t_value = 0.0;    ///< decision quantity (T(0) for Deterministic)
  double drawn_arg = 0.0;  ///< sampled arg, radians; 0 under MalusProbabilistic
};

/// Draw one arg value. ArccosUniform: arccos(u) - pi/2 with u uniform on
/// [-1, 1), density cos(a)/2 on [-pi/2, pi/2]. Gaussian: a normal draw
/// clamped to [-pi/2, pi/2].
double sample_arg(const SamplingDistribution& dist, RandomStream& rng);

struct DrawnP1 {
  double p1 = 0.0;
  double drawn_arg = 0.0;
};

/// Draw the analyzer's stochastic P1 component as seen from a frame rotated
/// by frame_offset_q on the Poincare sphere: 2*alpha' = arg + q (the '+'
/// branch is fixed), p1 = p0 * cos(2*alpha'). Pass q = 0 in the analyzer's
/// own frame.
DrawnP1 draw_p1(const Analyzer& analyzer, RandomStream& rng,
                double frame_offset_q);

/// Pass one photon through the analyzer, deciding the eigenchannel and
/// collapsing the state onto it.
///
/// Deterministic: t = s1 * p1 with p1 freshly drawn; Plus iff t >= 0
/// (T(0) = 0 breaks to Plus). MalusProbabilistic: Plus with probability
/// cos^2 of the relative linear-polarization angle, ignoring the drawn
/// orientation.
///
/// The post state is the selected channel's eigenstate, expressed in the
/// same frame s_in was given in (s1 = +-s0 in the analyzer's own frame).
ChannelOutcome transit(const Analyzer& analyzer, const StokesS& s_in,
                       double frame_offset_q, RandomStream& rng);

/// Poincare-sphere offset of a physical rotation: theta for spinors,
/// 2*theta for vectors.
double frame_offset(RotationKind kind, double delta_theta);

/// The analyzer's macroscopic axis as a matrix Stokes vector, expressed in
/// a frame rotated by frame_offset_q. Collapsed post states are eigenstates
/// of this axis.
StokesP analyzer_axis_stokes(const Analyzer& analyzer, double frame_offset_q);

}  // namespace qpol
