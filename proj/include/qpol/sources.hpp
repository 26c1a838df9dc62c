#pragma once

#include <utility>

#include "qpol/rng.hpp"
#include "qpol/stokes.hpp"

namespace qpol {

/// Single-photon emitter: fixed polarization angle, or 2*beta drawn
/// uniformly from [0, 2pi) per photon.
struct SingleSourceSpec {
  enum class Mode { FixedBeta, UniformBeta };

  Mode mode = Mode::UniformBeta;
  double beta = 0.0;  ///< FixedBeta only
  double amplitude = 1.0;
  double delta = 0.0;

  static SingleSourceSpec fixed_beta(double beta, double amplitude = 1.0,
                                     double delta = 0.0);
  static SingleSourceSpec uniform_beta(double amplitude = 1.0,
                                       double delta = 0.0);
};

/// Pair emitter. coupled = true gives both photons the same drawn beta
/// (identical S1, the causal polarization link); coupled = false draws the
/// two polarizations independently.
struct PairSourceSpec {
  bool coupled = true;
  double amplitude = 1.0;

  static PairSourceSpec make(bool coupled, double amplitude = 1.0);
};

/// One photon. UniformBeta consumes exactly one uniform draw (2*beta).
StokesS emit_photon(const SingleSourceSpec& spec, RandomStream& rng);

/// One photon pair. Draw order is fixed: photon 1's 2*beta first, then
/// photon 2's when uncoupled. Both photons are linearly polarized
/// (delta = 0); only S1 enters the channel decision downstream.
std::pair<StokesS, StokesS> emit_pair(const PairSourceSpec& spec,
                                      RandomStream& rng);

}  // namespace qpol
