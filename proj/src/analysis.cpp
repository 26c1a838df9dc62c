#include "qpol/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace qpol {

namespace {

// Recursive adaptive Simpson with a standard Richardson error estimate.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb, double whole,
                        double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * eps)
    return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double eps) {
  if (!(b > a)) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, eps, 48);
}

// Sub-intervals of [-pi/2, pi/2] where cos(a + q) > 0.
std::vector<std::pair<double, double>> positive_intervals(double q) {
  std::vector<std::pair<double, double>> out;
  const int k_min = static_cast<int>(std::floor((q - kPi) / kTwoPi)) - 1;
  const int k_max = static_cast<int>(std::ceil((q + kPi) / kTwoPi)) + 1;
  for (int k = k_min; k <= k_max; ++k) {
    const double lo = std::max(kTwoPi * k - kHalfPi - q, -kHalfPi);
    const double hi = std::min(kTwoPi * k + kHalfPi - q, kHalfPi);
    if (hi > lo) out.emplace_back(lo, hi);
  }
  return out;
}

double gaussian_pdf(double x, double sigma) {
  constexpr double inv_sqrt_two_pi = 0.39894228040143267794;
  const double z = x / sigma;
  return inv_sqrt_two_pi / sigma * std::exp(-0.5 * z * z);
}

// Upper tail P(X > x) of a centered normal.
double gaussian_tail(double x, double sigma) {
  return 0.5 * std::erfc(x / (sigma * std::sqrt(2.0)));
}

}  // namespace

double closed_form_plus_probability(double theta_deg,
                                    const SamplingDistribution& dist) {
  // Unwrapped, exactly as the transit step computes its offset: the fp-cos
  // sign at the clamp boundary must agree between oracle and simulation.
  const double q = 2.0 * deg_to_rad(theta_deg);
  const auto intervals = positive_intervals(q);
  constexpr double eps = 1e-10;  // per-segment budget keeps the total <= 1e-9

  if (dist.kind == SamplingDistribution::Kind::ArccosUniform) {
    double p = 0.0;
    for (const auto& [lo, hi] : intervals)
      p += integrate([](double a) { return 0.5 * std::cos(a); }, lo, hi, eps);
    return std::clamp(p, 0.0, 1.0);
  }

  const double sigma = dist.sigma;
  double p = 0.0;
  for (const auto& [lo, hi] : intervals)
    p += integrate([sigma](double a) { return gaussian_pdf(a, sigma); }, lo, hi,
                   eps);
  // Clamped draws put point masses on the boundary; each atom lands in the
  // Plus channel exactly when the simulation's decision quantity does,
  // i.e. when cos evaluated at the clamped double is >= 0.
  const double atom = gaussian_tail(kHalfPi, sigma);
  if (std::cos(-kHalfPi + q) >= 0.0) p += atom;
  if (std::cos(kHalfPi + q) >= 0.0) p += atom;
  return std::clamp(p, 0.0, 1.0);
}

double binomial_sigma(long long n, double p) {
  if (n < 1) throw std::invalid_argument("binomial_sigma: n must be >= 1");
  if (!(p >= 0.0) || !(p <= 1.0))
    throw std::invalid_argument("binomial_sigma: p must lie in [0, 1]");
  return std::sqrt(static_cast<double>(n) * p * (1.0 - p));
}

FitReport chi_square_fit(std::span<const double> observed,
                         std::span<const double> expected,
                         double trials_per_point, double variance_floor) {
  if (observed.size() != expected.size())
    throw std::invalid_argument("chi_square_fit: length mismatch");
  if (observed.size() < 2)
    throw std::invalid_argument("chi_square_fit: need at least 2 points");
  if (!(trials_per_point > 0.0))
    throw std::invalid_argument("chi_square_fit: trials_per_point must be > 0");
  if (variance_floor < 0.0)
    throw std::invalid_argument("chi_square_fit: variance_floor must be >= 0");

  FitReport report;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double exp = expected[i];
    if (exp < 0.0)
      throw std::invalid_argument("chi_square_fit: expected values must be >= 0");
    const double var = std::max(exp * (1.0 - exp / trials_per_point), variance_floor);
    if (!(var > 0.0))
      throw std::invalid_argument(
          "chi_square_fit: zero variance; provide a positive variance_floor");
    const double res = (observed[i] - exp) / std::sqrt(var);
    report.chi_square += res * res;
    report.max_abs_residual_sigmas =
        std::max(report.max_abs_residual_sigmas, std::fabs(res));
  }
  report.degrees_of_freedom = static_cast<int>(observed.size()) - 1;
  report.reduced_chi_square = report.chi_square / report.degrees_of_freedom;
  // The [0.3, 2.5] band flags systematically wrong curves; an exactly zero
  // chi-square only occurs for identical inputs and counts as agreement.
  report.pass = (report.reduced_chi_square >= 0.3 || report.chi_square == 0.0) &&
                report.reduced_chi_square <= 2.5 &&
                report.max_abs_residual_sigmas <= 4.0;
  return report;
}

double model_plus_fraction(double theta_deg, const SamplingDistribution& dist,
                           Criterion criterion) {
  if (criterion == Criterion::MalusProbabilistic) {
    const double c = std::cos(deg_to_rad(theta_deg));
    return c * c;
  }
  return closed_form_plus_probability(theta_deg, dist);
}

double model_gamma(double theta_deg, const SamplingDistribution& dist,
                   Criterion criterion, bool coupled) {
  if (!coupled) return 0.0;
  if (criterion == Criterion::MalusProbabilistic)
    return 0.5 * std::cos(2.0 * deg_to_rad(theta_deg));
  return 2.0 * closed_form_plus_probability(theta_deg, dist) - 1.0;
}

}  // namespace qpol
