#include "qpol/verify.hpp"

#include <cmath>
#include <complex>

#include "qpol/analysis.hpp"
#include "qpol/experiments.hpp"
#include "qpol/reference_eigen.hpp"
#include "qpol/report.hpp"

namespace qpol {

namespace {

std::string detail_max(const char* label, double value) {
  return std::string(label) + "=" + format_g9(value);
}

// Residuals of both eigenvectors from the bisection solver against the
// closed-form Stokes algebra, after normalizing s0 = p0 = 1.
CheckResult check_eigenstate_residuals(std::uint64_t seed) {
  RandomStream rng(seed, {0, 0, 7});
  double worst_residual = 0.0;
  double worst_gap = 0.0;
  const int n_matrices = 10000;
  for (int i = 0; i < n_matrices; ++i) {
    const auto m = HermitianAnalyzerMatrix::make(
        20.0 * rng.uniform01() - 10.0, 20.0 * rng.uniform01() - 10.0,
        10.0 * rng.uniform01(), kTwoPi * rng.uniform01());
    const StokesP p = matrix_to_stokes(m);
    const EigenPair eig = eigenvalues(m);
    const double scale = std::fabs(eig.lambda_plus) + std::fabs(eig.lambda_minus) + 1.0;
    worst_gap = std::max(
        worst_gap, std::fabs(eig.lambda_plus - eig.lambda_minus - p.p0) / scale);
    if (p.p0 <= 1e-9) continue;

    const ReferenceEigen ref = reference_eigen_2x2(m);
    const StokesP p_unit = {1.0, p.p1 / p.p0, p.p2 / p.p0, p.p3 / p.p0};
    for (const int branch : {+1, -1}) {
      const auto* vec = branch == 1 ? ref.vec_plus : ref.vec_minus;
      StokesS s = stokes_from_components(vec[0], vec[1]);
      s = {1.0, s.s1 / s.s0, s.s2 / s.s0, s.s3 / s.s0};
      const EigenstateResiduals res = eigenstate_residuals(s, p_unit, branch);
      worst_residual = std::max(worst_residual, res.max_abs());
    }
  }
  CheckResult out;
  out.name = "stokes_eigenstate_residuals";
  out.pass = worst_residual <= 1e-10 && worst_gap <= 1e-12;
  out.detail = detail_max("max_residual", worst_residual) + " " +
               detail_max("max_gap_error", worst_gap);
  return out;
}

CheckResult check_sampling_histogram(std::uint64_t seed) {
  const int n_draws = 1000000;
  const int n_bins = 50;
  RandomStream rng(seed, {1, 0, 7});
  const SamplingDistribution dist = SamplingDistribution::arccos_uniform();
  std::vector<long long> bins(n_bins, 0);
  for (int i = 0; i < n_draws; ++i) {
    const double a = sample_arg(dist, rng);
    int bin = static_cast<int>((a + kHalfPi) / kPi * n_bins);
    if (bin < 0) bin = 0;
    if (bin >= n_bins) bin = n_bins - 1;
    ++bins[bin];
  }
  double chi_square = 0.0;
  for (int b = 0; b < n_bins; ++b) {
    const double lo = -kHalfPi + kPi * b / n_bins;
    const double hi = -kHalfPi + kPi * (b + 1) / n_bins;
    const double expected = 0.5 * (std::sin(hi) - std::sin(lo)) * n_draws;
    const double diff = static_cast<double>(bins[b]) - expected;
    chi_square += diff * diff / expected;
  }
  const double per_dof = chi_square / (n_bins - 1);
  CheckResult out;
  out.name = "sampling_histogram";
  out.pass = per_dof < 1.5;
  out.detail = detail_max("chi_square_per_dof", per_dof);
  return out;
}

CheckResult check_quadrature_identity() {
  const SamplingDistribution dist = SamplingDistribution::arccos_uniform();
  double worst = 0.0;
  for (int deg = 0; deg <= 90; ++deg) {
    const double c = std::cos(deg_to_rad(deg));
    const double p = closed_form_plus_probability(deg, dist);
    worst = std::max(worst, std::fabs(p - c * c));
  }
  CheckResult out;
  out.name = "quadrature_identity";
  out.pass = worst <= 1e-8;
  out.detail = detail_max("max_abs_error", worst);
  return out;
}

CheckResult check_thread_reproducibility(std::uint64_t seed) {
  CoincidenceConfig config;
  config.grid = AngleGrid::from_range(0.0, 90.0, 15.0);
  config.pairs_per_angle = 20000;
  config.master_seed = seed;
  const std::string csv_1 = coincidence_results_csv(run_coincidence(config, 1));
  const std::string csv_8 = coincidence_results_csv(run_coincidence(config, 8));
  CheckResult out;
  out.name = "thread_reproducibility";
  out.pass = csv_1 == csv_8;
  out.detail = out.pass ? "identical_csv_bytes" : "csv_bytes_differ";
  return out;
}

}  // namespace

std::vector<CheckResult> run_verification(std::uint64_t seed) {
  return {check_eigenstate_residuals(seed), check_sampling_histogram(seed),
          check_quadrature_identity(), check_thread_reproducibility(seed)};
}

bool all_passed(const std::vector<CheckResult>& checks) {
  for (const CheckResult& check : checks)
    if (!check.pass) return false;
  return true;
}

}  // namespace qpol
