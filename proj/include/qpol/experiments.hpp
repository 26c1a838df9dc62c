#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qpol/analyzer.hpp"
#include "qpol/sources.hpp"

namespace qpol {

/// Strictly increasing list of relative angles in degrees, within [0, 360).
struct AngleGrid {
  std::vector<double> degrees;

  static AngleGrid from_list(std::vector<double> degrees);
  /// Inclusive range; stop is included when it lands on a step multiple.
  static AngleGrid from_range(double start, double stop, double step);

  std::size_t size() const { return degrees.size(); }
};

struct MalusConfig {
  AngleGrid grid;
  long long photons_per_angle = 0;
  std::uint64_t master_seed = 0;
  SamplingDistribution distribution{};
  Criterion criterion = Criterion::Deterministic;
};

struct CoincidenceConfig {
  AngleGrid grid;
  long long pairs_per_angle = 0;
  std::uint64_t master_seed = 0;
  SamplingDistribution distribution{};
  Criterion criterion = Criterion::Deterministic;
  bool coupled = true;
};

/// The four joint-outcome accumulators at one relative angle.
struct CountTable {
  std::uint64_t n_pp = 0;
  std::uint64_t n_pm = 0;
  std::uint64_t n_mp = 0;
  std::uint64_t n_mm = 0;

  std::uint64_t total() const { return n_pp + n_pm + n_mp + n_mm; }
  void add(Channel first, Channel second);
  CountTable& operator+=(const CountTable& other);
};

/// Per-angle output of a run: counts plus the derived quantities and the
/// parameter-free reference curves.
struct ResultRow {
  double theta_deg = 0.0;
  CountTable counts{};
  double gamma = 0.0;           ///< (n_pp + n_mm - n_pm - n_mp) / N
  double normalized_pp = 0.0;   ///< 2 n_pp / N
  double gamma_ref = 0.0;       ///< quantum pair curve cos(2 theta)
  double malus_plus_ref = 0.0;  ///< (N/2) cos^2(theta)
  double malus_minus_ref = 0.0; ///< (N/2) sin^2(theta)
  double gamma_sigma = 0.0;     ///< binomial standard error of gamma
};

/// correlation function of a count table; throws when the table is empty.
double gamma(const CountTable& counts);

/// 2 N_pp / N; throws when the table is empty.
double normalized_pp(const CountTable& counts);

/// Two analyzers in sequence, the second rotated by theta; photons drawn
/// with uniform 2*beta. Every photon passes through both stages and lands
/// in one (first, second) channel cell. Deterministic for a fixed config,
/// independent of the thread count.
std::vector<ResultRow> run_malus(const MalusConfig& config, int threads = 1);

/// Two-wing coincidence counting with the pair source; wing 1 is evaluated
/// in its own frame (q = 0) and wing 2 at q = 2*theta, with independent
/// streams per wing.
std::vector<ResultRow> run_coincidence(const CoincidenceConfig& config,
                                       int threads = 1);

struct ReferenceCurves {
  double malus_plus = 0.0;
  double malus_minus = 0.0;
  double gamma_qm = 0.0;
};

/// n_half * cos^2, n_half * sin^2 and cos(2 theta).
ReferenceCurves reference_curves(double theta_deg, long long n_half);

/// Four-setting CHSH evaluation. Each setting (a_i, b_j) runs its own
/// coincidence accumulation at the relative angle |a_i - b_j| with a
/// distinct stream label space, pairs_per_angle pairs per setting.
struct ChshResult {
  double s_value = 0.0;
  std::array<double, 4> e_values{};             ///< E(a1,b1), E(a1,b2), E(a2,b1), E(a2,b2)
  std::array<double, 4> setting_angles_deg{};   ///< the four |a_i - b_j|
  std::array<CountTable, 4> counts{};
  double s_sigma = 0.0;
};

ChshResult chsh_run(const CoincidenceConfig& base, double a1_deg, double a2_deg,
                    double b1_deg, double b2_deg, int threads = 1);

/// |E(a1,b1) - E(a1,b2)| + |E(a2,b1) + E(a2,b2)| with E = gamma.
double chsh_s(const CoincidenceConfig& base, double a1_deg, double a2_deg,
              double b1_deg, double b2_deg, int threads = 1);

}  // namespace qpol
