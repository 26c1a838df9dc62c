#include <string>

#include <doctest.h>
#include <json.hpp>

#include "qpol/config.hpp"
#include "qpol/report.hpp"
#include "qpol/svg.hpp"

using namespace qpol;

namespace {

std::vector<ResultRow> tiny_rows() {
  CoincidenceConfig config;
  config.grid = AngleGrid::from_list({0.0, 45.0, 90.0});
  config.pairs_per_angle = 2000;
  config.master_seed = 61;
  return run_coincidence(config);
}

}  // namespace

TEST_SUITE("config_report") {

TEST_CASE("full config round trip") {
  const std::string text = R"({
    "experiment": "coincidence",
    "seed": 99,
    "angles_deg": [0, 22.5, 45],
    "count_per_angle": 500,
    "distribution": {"type": "gaussian", "sigma_rad": 0.5},
    "criterion": "malus_probabilistic",
    "coupled": false,
    "output_dir": "out"
  })";
  const RunSpec spec = parse_run_spec(text, "coincidence");
  CHECK(spec.seed == 99);
  CHECK(spec.angles_deg == std::vector<double>{0.0, 22.5, 45.0});
  CHECK(spec.count_per_angle == 500);
  CHECK(spec.distribution.kind == SamplingDistribution::Kind::Gaussian);
  CHECK(spec.distribution.sigma == doctest::Approx(0.5));
  CHECK(spec.criterion == Criterion::MalusProbabilistic);
  CHECK_FALSE(spec.coupled);
  CHECK(spec.output_dir == "out");
}

TEST_CASE("range form of the angle grid") {
  const RunSpec spec = parse_run_spec(
      R"({"angles_deg": {"start": 0, "stop": 90, "step": 5}})", "malus");
  CHECK(spec.angles_deg.size() == 19);
  CHECK(spec.angles_deg.back() == doctest::Approx(90.0));
}

TEST_CASE("defaults for an empty config") {
  const RunSpec malus = parse_run_spec("{}", "malus");
  CHECK(malus.seed == 1);
  CHECK(malus.count_per_angle == 40000);
  CHECK(malus.angles_deg.size() == 19);
  CHECK(parse_run_spec("{}", "coincidence").count_per_angle == 10000);
  CHECK(parse_run_spec("{}", "chsh").count_per_angle == 100000);
}

TEST_CASE("unknown keys are rejected by name") {
  CHECK_THROWS_WITH_AS(parse_run_spec(R"({"phootons": 3})", "malus"),
                       doctest::Contains("phootons"), ConfigError);
  CHECK_THROWS_WITH_AS(
      parse_run_spec(R"({"distribution": {"type": "gaussian", "sigma": 1}})",
                     "malus"),
      doctest::Contains("sigma"), ConfigError);
  // coupled only applies to pair experiments
  CHECK_THROWS_AS(parse_run_spec(R"({"coupled": true})", "malus"), ConfigError);
  CHECK_NOTHROW(parse_run_spec(R"({"coupled": true})", "coincidence"));
}

TEST_CASE("numeric ranges are validated") {
  CHECK_THROWS_AS(parse_run_spec(R"({"count_per_angle": 0})", "malus"), ConfigError);
  CHECK_THROWS_AS(parse_run_spec(R"({"angles_deg": [5, 5]})", "malus"), ConfigError);
  CHECK_THROWS_AS(parse_run_spec(R"({"angles_deg": [360]})", "malus"), ConfigError);
  CHECK_THROWS_AS(
      parse_run_spec(R"({"distribution": {"type": "gaussian", "sigma_rad": 0}})",
                     "malus"),
      ConfigError);
  CHECK_THROWS_AS(
      parse_run_spec(R"({"chsh_angles_deg": [0, 45, 22.5]})", "chsh"), ConfigError);
  CHECK_THROWS_AS(parse_run_spec(R"({"criterion": "magic"})", "malus"), ConfigError);
}

TEST_CASE("experiment mismatch and parse diagnostics") {
  CHECK_THROWS_WITH_AS(parse_run_spec(R"({"experiment": "malus"})", "chsh"),
                       doctest::Contains("malus"), ConfigError);
  // malformed JSON diagnostics carry the line number
  CHECK_THROWS_WITH_AS(parse_run_spec("{\n  \"seed\": ,\n}", "malus"),
                       doctest::Contains("line"), ConfigError);
}

TEST_CASE("g9 formatting is stable") {
  CHECK(format_g9(0.5) == "0.5");
  CHECK(format_g9(90.0) == "90");
  CHECK(format_g9(2.0 / 3.0) == "0.666666667");
  CHECK(format_g9(1e-30) == "1e-30");
}

TEST_CASE("csv bodies have the specified columns and LF endings") {
  const auto rows = tiny_rows();
  const std::string coin = coincidence_results_csv(rows);
  CHECK(coin.rfind("theta_deg,n_pp,n_pm,n_mp,n_mm,gamma,gamma_ref,gamma_sigma,"
                   "norm_pp,norm_pp_ref\n",
                   0) == 0);
  CHECK(std::count(coin.begin(), coin.end(), '\n') == 4);
  CHECK(coin.find('\r') == std::string::npos);

  const std::string malus = malus_results_csv(rows);
  CHECK(malus.rfind("theta_deg,n_pp,n_pm,n_mp,n_mm,malus_plus_ref,malus_minus_ref\n",
                    0) == 0);
}

TEST_CASE("summaries carry verdicts and parse as json") {
  const auto rows = tiny_rows();
  RunSpec spec = default_run_spec("coincidence");
  spec.count_per_angle = 2000;
  spec.angles_deg = {0.0, 45.0, 90.0};
  const RunVerdict verdict = coincidence_verdict(rows, spec);
  const auto summary = nlohmann::json::parse(
      coincidence_summary_json(rows, spec, verdict));
  CHECK(summary.contains("pass"));
  CHECK(summary["experiment"] == "coincidence");
  CHECK(summary["fits"].contains("n_pp"));
  CHECK(summary["gamma_max_abs_dev"].is_number());
}

TEST_CASE("chsh summary exposes the bell verdict") {
  CoincidenceConfig base;
  base.grid = AngleGrid{{0.0}};
  base.pairs_per_angle = 20000;
  base.master_seed = 62;
  const ChshResult result = chsh_run(base, 0.0, 45.0, 22.5, 67.5);
  RunSpec spec = default_run_spec("chsh");
  spec.count_per_angle = 20000;
  const RunVerdict verdict = chsh_verdict(result, spec);
  const auto summary = nlohmann::json::parse(chsh_summary_json(result, spec, verdict));
  CHECK(summary["s_value"].get<double>() > 2.0);
  CHECK(summary["exceeds_bell_limit"].get<bool>());
  CHECK(verdict.pass);

  const std::string csv = chsh_results_csv(result, spec);
  CHECK(csv.rfind("setting,a_deg,b_deg,theta_deg,n_pp,n_pm,n_mp,n_mm,e_value,e_ref\n",
                  0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}

TEST_CASE("verdicts fail on data that contradicts the model") {
  // doctored counts: gamma(0) far from the deterministic-coupled model
  std::vector<ResultRow> rows = tiny_rows();
  RunSpec spec = default_run_spec("coincidence");
  spec.count_per_angle = 2000;
  spec.angles_deg = {0.0, 45.0, 90.0};
  REQUIRE(coincidence_verdict(rows, spec).pass);
  rows[0].counts = CountTable{500, 500, 500, 500};
  CHECK_FALSE(coincidence_verdict(rows, spec).pass);

  ChshResult chsh;
  chsh.setting_angles_deg = {22.5, 67.5, 22.5, 22.5};
  chsh.e_values = {0.1, -0.1, 0.1, 0.1};  // nowhere near 2*sqrt(2)
  chsh.s_value = 0.4;
  chsh.s_sigma = 0.005;
  RunSpec chsh_spec = default_run_spec("chsh");
  CHECK_FALSE(chsh_verdict(chsh, chsh_spec).pass);
}

TEST_CASE("svg chart is a self-contained document") {
  std::vector<SvgSeries> series(2);
  series[0] = {"data", {{0.0, 1.0}, {45.0, 0.5}, {90.0, 0.0}}, false, "#1f63a8"};
  series[1] = {"reference", {{0.0, 1.0}, {90.0, 0.0}}, true, "#444444"};
  const std::string svg = render_svg_chart("demo", "theta (deg)", "value", series);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("demo") != std::string::npos);
  CHECK(svg.find("reference") != std::string::npos);
  CHECK(svg.find("circle") != std::string::npos);
  CHECK(svg.find("<path") != std::string::npos);
}

TEST_CASE("write_text_file reports io failures") {
  CHECK_THROWS_AS(write_text_file("/dev/null/nope/results.csv", "x"), IoError);
}

}  // TEST_SUITE
