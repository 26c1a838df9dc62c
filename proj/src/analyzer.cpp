#include "qpol/analyzer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qpol {

SamplingDistribution SamplingDistribution::gaussian(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw std::invalid_argument(
        "SamplingDistribution: gaussian sigma must be positive and finite");
  return {Kind::Gaussian, sigma};
}

SamplingDistribution SamplingDistribution::gaussian() {
  return {Kind::Gaussian, default_gaussian_sigma()};
}

double default_gaussian_sigma() {
  static const double sigma = (kHalfPi - 1.0) * std::sqrt(kHalfPi);
  return sigma;
}

Analyzer Analyzer::make(double theta, double p0, int phi_sign,
                        SamplingDistribution distribution, Criterion criterion,
                        RotationKind kind) {
  if (!(p0 > 0.0) || !std::isfinite(p0))
    throw std::invalid_argument("Analyzer: p0 must be positive and finite");
  if (phi_sign != 1 && phi_sign != -1)
    throw std::invalid_argument("Analyzer: phi_sign must be +1 or -1");
  if (!std::isfinite(theta))
    throw std::invalid_argument("Analyzer: theta must be finite");
  return {theta, p0, phi_sign, distribution, criterion, kind};
}

double sample_arg(const SamplingDistribution& dist, RandomStream& rng) {
  if (dist.kind == SamplingDistribution::Kind::ArccosUniform) {
    const double u = rng.uniform_symmetric();
    return std::acos(u) - kHalfPi;
  }
  // Clamping keeps 2*alpha a valid hemisphere coordinate; ~2% of draws
  // land on the boundary at the default width.
  return std::clamp(rng.normal(dist.sigma), -kHalfPi, kHalfPi);
}

DrawnP1 draw_p1(const Analyzer& analyzer, RandomStream& rng,
                double frame_offset_q) {
  const double arg = sample_arg(analyzer.distribution, rng);
  const double two_alpha = arg + frame_offset_q;
  return {analyzer.p0 * std::cos(two_alpha), arg};
}

namespace {

StokesS collapse(const StokesS& s_in, Channel channel, double frame_offset_q) {
  const double sign = channel == Channel::Plus ? 1.0 : -1.0;
  return {s_in.s0, sign * s_in.s0 * std::cos(frame_offset_q),
          sign * s_in.s0 * std::sin(frame_offset_q), 0.0};
}

}  // namespace

ChannelOutcome transit(const Analyzer& analyzer, const StokesS& s_in,
                       double frame_offset_q, RandomStream& rng) {
  if (!(s_in.s0 > 0.0))
    throw std::invalid_argument("transit: degenerate input state (s0 must be > 0)");
  if (!(analyzer.p0 > 0.0))
    throw std::invalid_argument("transit: analyzer p0 must be > 0");

  if (analyzer.criterion == Criterion::Deterministic) {
    const DrawnP1 drawn = draw_p1(analyzer, rng, frame_offset_q);
    const double t = s_in.s1 * drawn.p1;
    const Channel channel = t >= 0.0 ? Channel::Plus : Channel::Minus;
    return {channel, collapse(s_in, channel, frame_offset_q), t, drawn.drawn_arg};
  }

  // Control model: Bernoulli on the Malus probability for the relative
  // axis angle. One uniform consumed; the drawn orientation plays no role.
  const double linear = std::hypot(s_in.s1, s_in.s2);
  const double p_plus =
      linear > 0.0
          ? 0.5 * (1.0 + (s_in.s1 * std::cos(frame_offset_q) +
                          s_in.s2 * std::sin(frame_offset_q)) /
                             linear)
          : 0.5;
  const double t = p_plus - rng.uniform01();
  const Channel channel = t >= 0.0 ? Channel::Plus : Channel::Minus;
  return {channel, collapse(s_in, channel, frame_offset_q), t, 0.0};
}

double frame_offset(RotationKind kind, double delta_theta) {
  return kind == RotationKind::Vector ? 2.0 * delta_theta : delta_theta;
}

StokesP analyzer_axis_stokes(const Analyzer& analyzer, double frame_offset_q) {
  return {analyzer.p0, analyzer.p0 * std::cos(frame_offset_q),
          analyzer.p0 * std::sin(frame_offset_q), 0.0};
}

}  // namespace qpol
