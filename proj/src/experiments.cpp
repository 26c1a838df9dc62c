#include "qpol/experiments.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

namespace qpol {

namespace {

// Work-unit granularity of the per-angle photon loop. Fixed so the stream
// labels, and therefore the results, do not depend on the thread count.
constexpr long long kBlockSize = 16384;

void validate_grid(const AngleGrid& grid) {
  if (grid.degrees.empty())
    throw std::invalid_argument("AngleGrid: must contain at least one angle");
  double prev = -1.0;
  for (const double deg : grid.degrees) {
    if (!std::isfinite(deg) || deg < 0.0 || deg >= 360.0)
      throw std::invalid_argument("AngleGrid: angles must lie in [0, 360)");
    if (deg <= prev)
      throw std::invalid_argument("AngleGrid: angles must be strictly increasing");
    prev = deg;
  }
}

struct WorkUnit {
  std::size_t angle_index = 0;
  std::uint32_t block_index = 0;
  long long count = 0;
};

// Runs one CountTable-producing function per (angle, block) work unit on
// the requested number of threads. Accumulation is a commutative integer
// merge, so the result is invariant to scheduling.
std::vector<CountTable> run_blocks(
    std::size_t n_angles, long long per_angle, int threads,
    const std::function<CountTable(std::size_t, std::uint32_t, long long)>& unit_fn) {
  std::vector<WorkUnit> units;
  for (std::size_t ai = 0; ai < n_angles; ++ai) {
    long long remaining = per_angle;
    std::uint32_t bi = 0;
    while (remaining > 0) {
      const long long n = remaining < kBlockSize ? remaining : kBlockSize;
      units.push_back({ai, bi++, n});
      remaining -= n;
    }
  }

  std::vector<CountTable> unit_results(units.size());
  const int n_threads = std::max(1, threads);
  if (n_threads == 1 || units.size() <= 1) {
    for (std::size_t i = 0; i < units.size(); ++i)
      unit_results[i] = unit_fn(units[i].angle_index, units[i].block_index,
                                units[i].count);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= units.size()) return;
        unit_results[i] = unit_fn(units[i].angle_index, units[i].block_index,
                                  units[i].count);
      }
    };
    std::vector<std::thread> pool;
    const std::size_t n_workers =
        std::min<std::size_t>(static_cast<std::size_t>(n_threads), units.size());
    pool.reserve(n_workers);
    for (std::size_t t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<CountTable> per_angle_counts(n_angles);
  for (std::size_t i = 0; i < units.size(); ++i)
    per_angle_counts[units[i].angle_index] += unit_results[i];
  return per_angle_counts;
}

Analyzer make_analyzer(double theta, const SamplingDistribution& dist,
                       Criterion criterion) {
  return Analyzer::make(theta, 1.0, 1, dist, criterion, RotationKind::Vector);
}

ResultRow make_row(double theta_deg, const CountTable& counts) {
  ResultRow row;
  row.theta_deg = theta_deg;
  row.counts = counts;
  const double n = static_cast<double>(counts.total());
  row.gamma = gamma(counts);
  row.normalized_pp = normalized_pp(counts);
  const double theta = deg_to_rad(theta_deg);
  const double cos_theta = std::cos(theta);
  const double sin_theta = std::sin(theta);
  row.gamma_ref = std::cos(2.0 * theta);
  row.malus_plus_ref = 0.5 * n * cos_theta * cos_theta;
  row.malus_minus_ref = 0.5 * n * sin_theta * sin_theta;
  const double var = 1.0 - row.gamma * row.gamma;
  row.gamma_sigma = var > 0.0 ? std::sqrt(var / n) : 0.0;
  return row;
}

std::vector<ResultRow> run_coincidence_impl(const CoincidenceConfig& config,
                                            int threads,
                                            std::uint32_t label_offset) {
  validate_grid(config.grid);
  if (config.pairs_per_angle < 1)
    throw std::invalid_argument("CoincidenceConfig: pairs_per_angle must be >= 1");

  const PairSourceSpec source = PairSourceSpec::make(config.coupled);
  const Analyzer first = make_analyzer(0.0, config.distribution, config.criterion);

  auto unit_fn = [&](std::size_t ai, std::uint32_t bi, long long n) {
    const double theta = deg_to_rad(config.grid.degrees[ai]);
    const Analyzer second = make_analyzer(theta, config.distribution, config.criterion);
    const double q = frame_offset(RotationKind::Vector, theta);
    const std::uint32_t angle_label = static_cast<std::uint32_t>(ai) + label_offset;
    RandomStream src(config.master_seed, {angle_label, bi, 0});
    RandomStream wing_1(config.master_seed, {angle_label, bi, 1});
    RandomStream wing_2(config.master_seed, {angle_label, bi, 2});
    CountTable table;
    for (long long i = 0; i < n; ++i) {
      const auto [state_1, state_2] = emit_pair(source, src);
      const ChannelOutcome out_1 = transit(first, state_1, 0.0, wing_1);
      const ChannelOutcome out_2 = transit(second, state_2, q, wing_2);
      table.add(out_1.channel, out_2.channel);
    }
    return table;
  };

  const std::vector<CountTable> counts = run_blocks(
      config.grid.size(), config.pairs_per_angle, threads, unit_fn);
  std::vector<ResultRow> rows;
  rows.reserve(counts.size());
  for (std::size_t ai = 0; ai < counts.size(); ++ai)
    rows.push_back(make_row(config.grid.degrees[ai], counts[ai]));
  return rows;
}

}  // namespace

AngleGrid AngleGrid::from_list(std::vector<double> degrees) {
  AngleGrid grid{std::move(degrees)};
  validate_grid(grid);
  return grid;
}

AngleGrid AngleGrid::from_range(double start, double stop, double step) {
  if (!(step > 0.0))
    throw std::invalid_argument("AngleGrid: step must be > 0");
  if (stop < start)
    throw std::invalid_argument("AngleGrid: stop must be >= start");
  std::vector<double> degrees;
  for (int i = 0;; ++i) {
    const double value = start + static_cast<double>(i) * step;
    if (value > stop + 1e-9) break;
    degrees.push_back(value);
  }
  return from_list(std::move(degrees));
}

void CountTable::add(Channel first, Channel second) {
  if (first == Channel::Plus)
    second == Channel::Plus ? ++n_pp : ++n_pm;
  else
    second == Channel::Plus ? ++n_mp : ++n_mm;
}

CountTable& CountTable::operator+=(const CountTable& other) {
  n_pp += other.n_pp;
  n_pm += other.n_pm;
  n_mp += other.n_mp;
  n_mm += other.n_mm;
  return *this;
}

double gamma(const CountTable& counts) {
  const std::uint64_t n = counts.total();
  if (n == 0) throw std::invalid_argument("gamma: empty count table");
  const double agree = static_cast<double>(counts.n_pp + counts.n_mm);
  const double disagree = static_cast<double>(counts.n_pm + counts.n_mp);
  return (agree - disagree) / static_cast<double>(n);
}

double normalized_pp(const CountTable& counts) {
  const std::uint64_t n = counts.total();
  if (n == 0) throw std::invalid_argument("normalized_pp: empty count table");
  return 2.0 * static_cast<double>(counts.n_pp) / static_cast<double>(n);
}

std::vector<ResultRow> run_malus(const MalusConfig& config, int threads) {
  validate_grid(config.grid);
  if (config.photons_per_angle < 1)
    throw std::invalid_argument("MalusConfig: photons_per_angle must be >= 1");

  const SingleSourceSpec source = SingleSourceSpec::uniform_beta();
  const Analyzer first = make_analyzer(0.0, config.distribution, config.criterion);

  auto unit_fn = [&](std::size_t ai, std::uint32_t bi, long long n) {
    const double theta = deg_to_rad(config.grid.degrees[ai]);
    const Analyzer second = make_analyzer(theta, config.distribution, config.criterion);
    const double q = frame_offset(RotationKind::Vector, theta);
    const std::uint32_t angle_label = static_cast<std::uint32_t>(ai);
    RandomStream src(config.master_seed, {angle_label, bi, 0});
    RandomStream stage_1(config.master_seed, {angle_label, bi, 1});
    RandomStream stage_2(config.master_seed, {angle_label, bi, 2});
    CountTable table;
    for (long long i = 0; i < n; ++i) {
      const StokesS state = emit_photon(source, src);
      const ChannelOutcome out_1 = transit(first, state, 0.0, stage_1);
      // The second stage sees the collapsed state in the first analyzer's
      // frame, offset by q = 2*theta for the vector field.
      const ChannelOutcome out_2 = transit(second, out_1.post_state, q, stage_2);
      table.add(out_1.channel, out_2.channel);
    }
    return table;
  };

  const std::vector<CountTable> counts = run_blocks(
      config.grid.size(), config.photons_per_angle, threads, unit_fn);
  std::vector<ResultRow> rows;
  rows.reserve(counts.size());
  for (std::size_t ai = 0; ai < counts.size(); ++ai)
    rows.push_back(make_row(config.grid.degrees[ai], counts[ai]));
  return rows;
}

std::vector<ResultRow> run_coincidence(const CoincidenceConfig& config,
                                       int threads) {
  return run_coincidence_impl(config, threads, 0);
}

ReferenceCurves reference_curves(double theta_deg, long long n_half) {
  const double theta = deg_to_rad(theta_deg);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double n = static_cast<double>(n_half);
  return {n * c * c, n * s * s, std::cos(2.0 * theta)};
}

ChshResult chsh_run(const CoincidenceConfig& base, double a1_deg, double a2_deg,
                    double b1_deg, double b2_deg, int threads) {
  const std::array<std::pair<double, double>, 4> settings = {
      std::pair{a1_deg, b1_deg}, std::pair{a1_deg, b2_deg},
      std::pair{a2_deg, b1_deg}, std::pair{a2_deg, b2_deg}};

  ChshResult result;
  double variance = 0.0;
  for (std::size_t k = 0; k < settings.size(); ++k) {
    // Only the relative angle enters the model; settings with equal
    // relative angle still get independent streams via the label offset.
    const double rel =
        std::fabs(wrap_two_pi(deg_to_rad(settings[k].first)) -
                  wrap_two_pi(deg_to_rad(settings[k].second)));
    CoincidenceConfig setting = base;
    setting.grid = AngleGrid{{rad_to_deg(rel)}};
    const std::uint32_t label_offset = static_cast<std::uint32_t>(k + 1) << 16;
    const std::vector<ResultRow> rows =
        run_coincidence_impl(setting, threads, label_offset);
    result.setting_angles_deg[k] = rows[0].theta_deg;
    result.e_values[k] = rows[0].gamma;
    result.counts[k] = rows[0].counts;
    variance += rows[0].gamma_sigma * rows[0].gamma_sigma;
  }
  result.s_value = std::fabs(result.e_values[0] - result.e_values[1]) +
                   std::fabs(result.e_values[2] + result.e_values[3]);
  result.s_sigma = std::sqrt(variance);
  return result;
}

double chsh_s(const CoincidenceConfig& base, double a1_deg, double a2_deg,
              double b1_deg, double b2_deg, int threads) {
  return chsh_run(base, a1_deg, a2_deg, b1_deg, b2_deg, threads).s_value;
}

}  // namespace qpol
