#include "qpol/sources.hpp"

#include <cmath>
#include <stdexcept>

namespace qpol {

namespace {

void check_amplitude(double amplitude) {
  if (!(amplitude > 0.0) || !std::isfinite(amplitude))
    throw std::invalid_argument("source: amplitude must be positive and finite");
}

}  // namespace

SingleSourceSpec SingleSourceSpec::fixed_beta(double beta, double amplitude,
                                              double delta) {
  check_amplitude(amplitude);
  return {Mode::FixedBeta, wrap_two_pi(beta), amplitude, wrap_two_pi(delta)};
}

SingleSourceSpec SingleSourceSpec::uniform_beta(double amplitude, double delta) {
  check_amplitude(amplitude);
  return {Mode::UniformBeta, 0.0, amplitude, wrap_two_pi(delta)};
}

PairSourceSpec PairSourceSpec::make(bool coupled, double amplitude) {
  check_amplitude(amplitude);
  return {coupled, amplitude};
}

StokesS emit_photon(const SingleSourceSpec& spec, RandomStream& rng) {
  double beta = spec.beta;
  if (spec.mode == SingleSourceSpec::Mode::UniformBeta)
    beta = 0.5 * (kTwoPi * rng.uniform01());  // 2*beta uniform on [0, 2pi)
  return field_to_stokes(FieldState::make(spec.amplitude, beta, 0.0, spec.delta));
}

std::pair<StokesS, StokesS> emit_pair(const PairSourceSpec& spec,
                                      RandomStream& rng) {
  const double beta_1 = 0.5 * (kTwoPi * rng.uniform01());
  const double beta_2 = spec.coupled ? beta_1 : 0.5 * (kTwoPi * rng.uniform01());
  const StokesS first =
      field_to_stokes(FieldState::make(spec.amplitude, beta_1, 0.0, 0.0));
  const StokesS second =
      spec.coupled ? first
                   : field_to_stokes(FieldState::make(spec.amplitude, beta_2, 0.0, 0.0));
  return {first, second};
}

}  // namespace qpol
