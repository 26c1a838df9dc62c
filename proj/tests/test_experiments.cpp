#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "qpol/experiments.hpp"

using namespace qpol;

namespace {

MalusConfig malus_config(long long photons, std::uint64_t seed,
                         AngleGrid grid = AngleGrid::from_range(0, 90, 5)) {
  MalusConfig config;
  config.grid = std::move(grid);
  config.photons_per_angle = photons;
  config.master_seed = seed;
  return config;
}

CoincidenceConfig coincidence_config(long long pairs, std::uint64_t seed,
                                     AngleGrid grid = AngleGrid::from_range(0, 90, 5)) {
  CoincidenceConfig config;
  config.grid = std::move(grid);
  config.pairs_per_angle = pairs;
  config.master_seed = seed;
  return config;
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("gamma and normalized_pp on fixed tables") {
  CHECK(gamma(CountTable{10, 0, 0, 10}) == doctest::Approx(1.0));
  CHECK(gamma(CountTable{25, 25, 25, 25}) == doctest::Approx(0.0));
  CHECK(gamma(CountTable{50, 0, 0, 50}) == doctest::Approx(1.0));
  CHECK(gamma(CountTable{0, 50, 50, 0}) == doctest::Approx(-1.0));
  CHECK(normalized_pp(CountTable{50, 0, 0, 50}) == doctest::Approx(1.0));
  CHECK(normalized_pp(CountTable{25, 25, 25, 25}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(gamma(CountTable{}), std::invalid_argument);
  CHECK_THROWS_AS(normalized_pp(CountTable{}), std::invalid_argument);
}

TEST_CASE("angle grid validation") {
  CHECK_THROWS_AS(AngleGrid::from_list({}), std::invalid_argument);
  CHECK_THROWS_AS(AngleGrid::from_list({10, 10}), std::invalid_argument);
  CHECK_THROWS_AS(AngleGrid::from_list({10, 5}), std::invalid_argument);
  CHECK_THROWS_AS(AngleGrid::from_list({-1}), std::invalid_argument);
  CHECK_THROWS_AS(AngleGrid::from_list({360}), std::invalid_argument);
  CHECK_THROWS_AS(AngleGrid::from_range(0, 90, 0), std::invalid_argument);
  CHECK(AngleGrid::from_range(0, 90, 5).size() == 19);
  CHECK(AngleGrid::from_range(0, 90, 5).degrees.back() == doctest::Approx(90.0));
}

TEST_CASE("malus run is exact at the endpoints") {
  const auto rows = run_malus(malus_config(20000, 31, AngleGrid{{0.0, 90.0}}));
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].counts.n_pm == 0);  // zero offset: stage 2 always agrees
  CHECK(rows[0].counts.n_mp == 0);
  CHECK(rows[1].counts.n_pp == 0);  // quarter turn: stage 2 always flips
  CHECK(rows[1].counts.n_mm == 0);
  CHECK(rows[0].counts.total() == 20000);
  CHECK(rows[1].counts.total() == 20000);
}

TEST_CASE("malus run reproduces N/2 cos^2 at 45 degrees") {
  const auto rows = run_malus(malus_config(40000, 32, AngleGrid{{45.0}}));
  const double n_pp = static_cast<double>(rows[0].counts.n_pp);
  CHECK(std::fabs(n_pp - 10000.0) <= 4.0 * std::sqrt(40000.0 / 8.0));
  CHECK(rows[0].malus_plus_ref == doctest::Approx(10000.0));
  CHECK(rows[0].malus_minus_ref == doctest::Approx(10000.0));
}

TEST_CASE("coincidence run is exact at the endpoints") {
  const auto rows = run_coincidence(coincidence_config(10000, 33, AngleGrid{{0.0, 90.0}}));
  CHECK(rows[0].gamma == 1.0);
  CHECK(rows[0].counts.n_pm == 0);
  CHECK(rows[0].counts.n_mp == 0);
  CHECK(rows[1].gamma == -1.0);
  CHECK(rows[1].counts.n_pp == 0);
  CHECK(rows[1].counts.n_mm == 0);
}

TEST_CASE("coincidence gamma at 22.5 degrees matches cos 45") {
  const auto rows = run_coincidence(coincidence_config(100000, 34, AngleGrid{{22.5}}));
  CHECK(rows[0].gamma == doctest::Approx(std::cos(kPi / 4)).epsilon(0.015));
}

TEST_CASE("closed-form agreement across the grid") {
  const auto rows = run_coincidence(coincidence_config(10000, 35));
  for (const ResultRow& row : rows) {
    CHECK(row.counts.total() == 10000);
    CHECK(std::fabs(row.gamma) <= 1.0);
    // 2 N_pp / N lives on the cos^2 scale but its estimator can poke just
    // above 1 at zero offset, where N_pp fluctuates around N/2
    CHECK(row.normalized_pp >= 0.0);
    CHECK(row.normalized_pp <= 2.0);

    const double theta = deg_to_rad(row.theta_deg);
    const double gamma_expected = std::cos(2.0 * theta);
    const double gamma_bound =
        4.0 * std::sqrt((1.0 - gamma_expected * gamma_expected) / 10000.0) + 0.01;
    CHECK(std::fabs(row.gamma - gamma_expected) <= gamma_bound);

    const double pp_expected = std::cos(theta) * std::cos(theta);
    const double p = 0.5 * pp_expected;
    const double pp_bound = 8.0 * std::sqrt(p * (1.0 - p) / 10000.0) + 0.01;
    CHECK(std::fabs(row.normalized_pp - pp_expected) <= pp_bound);
  }
}

TEST_CASE("gamma symmetry under reflection of the relative angle") {
  const auto at = [](double deg, std::uint64_t seed) {
    return run_coincidence(coincidence_config(20000, seed, AngleGrid{{deg}}))[0];
  };
  const ResultRow base = at(30.0, 36);
  const ResultRow mirrored = at(330.0, 37);   // -30 degrees
  const ResultRow reflected = at(150.0, 38);  // 180 - 30 degrees
  const double bound = 4.0 * std::sqrt(2.0) *
                       std::sqrt((1.0 - 0.25) / 20000.0);
  CHECK(std::fabs(base.gamma - mirrored.gamma) <= bound);
  CHECK(std::fabs(base.gamma - reflected.gamma) <= bound);
}

TEST_CASE("uncoupled pairs lose the correlation") {
  CoincidenceConfig config = coincidence_config(10000, 39);
  config.coupled = false;
  for (const ResultRow& row : run_coincidence(config))
    CHECK(std::fabs(row.gamma) <= 0.04);
}

TEST_CASE("probabilistic criterion halves gamma at zero offset") {
  CoincidenceConfig det = coincidence_config(10000, 40, AngleGrid{{0.0}});
  CoincidenceConfig prob = det;
  prob.criterion = Criterion::MalusProbabilistic;
  const double g_det = run_coincidence(det)[0].gamma;
  const double g_prob = run_coincidence(prob)[0].gamma;
  CHECK(g_det - g_prob >= 0.4);
  CHECK(g_prob == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("chsh at the canonical settings") {
  CoincidenceConfig base = coincidence_config(30000, 41, AngleGrid{{0.0}});
  const ChshResult det = chsh_run(base, 0.0, 45.0, 22.5, 67.5);
  CHECK(det.s_value == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(0.02));
  CHECK(det.setting_angles_deg[0] == doctest::Approx(22.5));
  CHECK(det.setting_angles_deg[1] == doctest::Approx(67.5));

  base.criterion = Criterion::MalusProbabilistic;
  const double s_prob = chsh_s(base, 0.0, 45.0, 22.5, 67.5);
  CHECK(s_prob == doctest::Approx(std::sqrt(2.0)).epsilon(0.03));
  CHECK(det.s_value > 2.0);
  CHECK(s_prob < 2.0);

  base.criterion = Criterion::Deterministic;
  base.coupled = false;
  CHECK(std::fabs(chsh_s(base, 0.0, 45.0, 22.5, 67.5)) <= 0.04);
}

TEST_CASE("runs are invariant to the thread count") {
  const CoincidenceConfig config = coincidence_config(30000, 42,
                                                      AngleGrid::from_range(0, 90, 15));
  const auto rows_1 = run_coincidence(config, 1);
  const auto rows_4 = run_coincidence(config, 4);
  REQUIRE(rows_1.size() == rows_4.size());
  for (std::size_t i = 0; i < rows_1.size(); ++i) {
    CHECK(rows_1[i].counts.n_pp == rows_4[i].counts.n_pp);
    CHECK(rows_1[i].counts.n_pm == rows_4[i].counts.n_pm);
    CHECK(rows_1[i].counts.n_mp == rows_4[i].counts.n_mp);
    CHECK(rows_1[i].counts.n_mm == rows_4[i].counts.n_mm);
    CHECK(rows_1[i].gamma == rows_4[i].gamma);
  }

  const auto malus_1 = run_malus(malus_config(50000, 43), 1);
  const auto malus_8 = run_malus(malus_config(50000, 43), 8);
  for (std::size_t i = 0; i < malus_1.size(); ++i)
    CHECK(malus_1[i].counts.n_pp == malus_8[i].counts.n_pp);
}

TEST_CASE("reference curves") {
  const ReferenceCurves zero = reference_curves(0.0, 20000);
  CHECK(zero.malus_plus == doctest::Approx(20000.0));
  CHECK(zero.malus_minus == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(zero.gamma_qm == doctest::Approx(1.0));

  const ReferenceCurves quarter = reference_curves(90.0, 20000);
  CHECK(quarter.malus_plus == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(quarter.malus_minus == doctest::Approx(20000.0));
  CHECK(quarter.gamma_qm == doctest::Approx(-1.0));

  const ReferenceCurves sixty = reference_curves(60.0, 10000);
  CHECK(sixty.malus_plus == doctest::Approx(2500.0));
  CHECK(sixty.malus_minus == doctest::Approx(7500.0));
  CHECK(sixty.gamma_qm == doctest::Approx(-0.5));
}

TEST_CASE("invalid configs are rejected before sampling") {
  CHECK_THROWS_AS(run_malus(malus_config(0, 1)), std::invalid_argument);
  CHECK_THROWS_AS(run_coincidence(coincidence_config(0, 1)), std::invalid_argument);
}

}  // TEST_SUITE
