#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qpol {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// The built-in property suite behind the `verify` subcommand:
///   - eigenstate-relation residuals over 10^4 random matrices, against the
///     bisection eigensolver, max |r_i| <= 1e-10 after normalization
///   - spectral-gap identity lambda_+ - lambda_- = p0 to 1e-12 relative
///   - arccos sampling histogram vs the cos(a)/2 density, 10^6 draws,
///     50 bins, chi-square per dof < 1.5
///   - quadrature oracle vs cos^2(theta) on a 1-degree grid, <= 1e-8
///   - thread-count reproducibility: identical CSV bytes for 1 vs 8 threads
std::vector<CheckResult> run_verification(std::uint64_t seed);

bool all_passed(const std::vector<CheckResult>& checks);

}  // namespace qpol
