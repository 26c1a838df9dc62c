#pragma once

#include <span>

#include "qpol/analyzer.hpp"

namespace qpol {

/// Chi-square goodness-of-fit verdict for a counting curve.
struct FitReport {
  double chi_square = 0.0;
  int degrees_of_freedom = 0;
  double reduced_chi_square = 0.0;
  double max_abs_residual_sigmas = 0.0;
  bool pass = false;
};

/// Probability that a positive-branch eigenstate stays in the Plus channel
/// of an analyzer at relative angle theta: the integral of the sampling
/// density over {a : cos(a + 2*theta) >= 0}, by adaptive quadrature
/// (absolute error <= 1e-9). For ArccosUniform this equals cos^2(theta)
/// analytically; the Gaussian case integrates the clamped normal density,
/// whose boundary atoms are counted the way the simulation decides them.
double closed_form_plus_probability(double theta_deg,
                                    const SamplingDistribution& dist);

/// sqrt(n p (1 - p)).
double binomial_sigma(long long n, double p);

/// Chi-square against a parameter-free expected curve with binomial
/// variance per point: var = max(exp * (1 - exp / trials), floor).
/// dof = points - 1; pass needs reduced chi-square in [0.3, 2.5] and every
/// residual within 4 sigma.
FitReport chi_square_fit(std::span<const double> observed,
                         std::span<const double> expected,
                         double trials_per_point, double variance_floor);

/// Model expectation of the pair correlation gamma(theta) for a given
/// configuration; the closed-form counterpart of run_coincidence.
double model_gamma(double theta_deg, const SamplingDistribution& dist,
                   Criterion criterion, bool coupled);

/// Model expectation of the second-stage Plus fraction for a Plus-collapsed
/// input, the closed-form counterpart of the Malus stage.
double model_plus_fraction(double theta_deg, const SamplingDistribution& dist,
                           Criterion criterion);

}  // namespace qpol
