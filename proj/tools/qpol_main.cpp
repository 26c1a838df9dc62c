// qpol - batch driver for the quasi-deterministic analyzer simulator.
//
// Subcommands: malus | coincidence | chsh | verify. Runs are described by a
// JSON config file and/or flags, write results.csv and summary.json to the
// output directory, and print a one-screen summary with fit verdicts.
//
// Exit codes: 0 success, 1 configuration error, 2 verification/fit check
// failed, 3 I/O error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qpol/config.hpp"
#include "qpol/report.hpp"
#include "qpol/svg.hpp"
#include "qpol/verify.hpp"

namespace {

using namespace qpol;

struct CliOptions {
  std::string config_path;
  std::optional<long long> seed;
  std::optional<long long> count;
  std::string angles;  // START:STOP:STEP
  int threads = 1;
  bool svg = false;
  std::string output_dir;
};

void add_common_options(CLI::App* cmd, CliOptions& opts) {
  cmd->add_option("--config", opts.config_path, "JSON run configuration file");
  cmd->add_option("--seed", opts.seed, "Master seed (overrides the config)");
  cmd->add_option("--count", opts.count,
                  "Photons or pairs per angle (overrides the config)");
  cmd->add_option("--angles", opts.angles,
                  "Angle grid START:STOP:STEP in degrees (overrides the config)");
  cmd->add_option("--threads", opts.threads, "Worker threads (wall time only)")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--svg", opts.svg, "Also write plot-ready SVG charts");
  cmd->add_option("--output", opts.output_dir, "Output directory");
}

std::vector<double> parse_angles_flag(const std::string& text) {
  double start = 0.0, stop = 0.0, step = 0.0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &start, &stop, &step, &tail) != 3)
    throw ConfigError("--angles expects START:STOP:STEP, got \"" + text + "\"");
  if (!(step > 0.0)) throw ConfigError("--angles step must be > 0");
  if (stop < start) throw ConfigError("--angles stop must be >= start");
  std::vector<double> out;
  for (int i = 0;; ++i) {
    const double v = start + static_cast<double>(i) * step;
    if (v > stop + 1e-9) break;
    out.push_back(v);
  }
  return out;
}

RunSpec resolve_spec(const std::string& experiment, const CliOptions& opts) {
  RunSpec spec;
  if (!opts.config_path.empty()) {
    std::ifstream stream(opts.config_path, std::ios::binary);
    if (!stream)
      throw ConfigError("cannot read config file \"" + opts.config_path + "\"");
    std::ostringstream text;
    text << stream.rdbuf();
    spec = parse_run_spec(text.str(), experiment);
  } else {
    spec = default_run_spec(experiment);
  }

  if (opts.seed) spec.seed = static_cast<std::uint64_t>(*opts.seed);
  if (opts.count) {
    if (*opts.count < 1) throw ConfigError("--count must be >= 1");
    spec.count_per_angle = *opts.count;
  }
  if (!opts.angles.empty()) spec.angles_deg = parse_angles_flag(opts.angles);
  if (!opts.output_dir.empty()) spec.output_dir = opts.output_dir;

  // QPOL_SEED takes precedence over both config and --seed when set.
  if (const char* env = std::getenv("QPOL_SEED")) {
    try {
      std::size_t used = 0;
      const long long value = std::stoll(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument("");
      spec.seed = static_cast<std::uint64_t>(value);
    } catch (const std::exception&) {
      throw ConfigError(std::string("QPOL_SEED is not an integer: \"") + env + "\"");
    }
  }
  return spec;
}

CoincidenceConfig coincidence_config(const RunSpec& spec) {
  CoincidenceConfig config;
  config.grid = AngleGrid::from_list(spec.angles_deg);
  config.pairs_per_angle = spec.count_per_angle;
  config.master_seed = spec.seed;
  config.distribution = spec.distribution;
  config.criterion = spec.criterion;
  config.coupled = spec.coupled;
  return config;
}

void print_fit_lines(const RunVerdict& verdict) {
  for (std::size_t i = 0; i < verdict.fits.size(); ++i) {
    const FitReport& fit = verdict.fits[i];
    std::printf("fit %-18s reduced_chi2=%-8s max_residual=%-7s [%s]\n",
                verdict.fit_names[i].c_str(),
                format_g9(fit.reduced_chi_square).c_str(),
                (format_g9(fit.max_abs_residual_sigmas) + "s").c_str(),
                fit.pass ? "pass" : "FAIL");
  }
}

std::vector<std::pair<double, double>> curve_points(
    double max_deg, const std::function<double(double)>& f) {
  std::vector<std::pair<double, double>> points;
  for (double deg = 0.0; deg <= max_deg + 1e-9; deg += max_deg / 180.0)
    points.emplace_back(deg, f(deg));
  return points;
}

void write_malus_svg(const RunSpec& spec, const std::vector<ResultRow>& rows) {
  const double max_deg = rows.back().theta_deg;
  const double n_half = 0.5 * static_cast<double>(spec.count_per_angle);
  SvgSeries pp{"(+,+) counts", {}, false, "#1f63a8"};
  SvgSeries mp{"(-,+) counts", {}, false, "#c23b21"};
  for (const ResultRow& row : rows) {
    pp.points.emplace_back(row.theta_deg, static_cast<double>(row.counts.n_pp));
    mp.points.emplace_back(row.theta_deg, static_cast<double>(row.counts.n_mp));
  }
  SvgSeries malus_plus{"N/2 cos^2", curve_points(max_deg, [&](double deg) {
                         const double c = std::cos(deg_to_rad(deg));
                         return n_half * c * c;
                       }),
                       true, "#1f63a8"};
  SvgSeries malus_minus{"N/2 sin^2", curve_points(max_deg, [&](double deg) {
                          const double s = std::sin(deg_to_rad(deg));
                          return n_half * s * s;
                        }),
                        true, "#c23b21"};
  write_text_file(std::filesystem::path(spec.output_dir) / "fig1.svg",
                  render_svg_chart("Malus counts vs relative angle", "theta (deg)",
                                   "counts", {malus_plus, malus_minus, pp, mp}));
}

void write_coincidence_svg(const RunSpec& spec, const std::vector<ResultRow>& rows) {
  const double max_deg = rows.back().theta_deg;
  SvgSeries pp{"2 N_pp / N", {}, false, "#1f63a8"};
  SvgSeries gm{"gamma", {}, false, "#1f63a8"};
  for (const ResultRow& row : rows) {
    pp.points.emplace_back(row.theta_deg, row.normalized_pp);
    gm.points.emplace_back(row.theta_deg, row.gamma);
  }
  SvgSeries cos2{"cos^2", curve_points(max_deg, [](double deg) {
                   const double c = std::cos(deg_to_rad(deg));
                   return c * c;
                 }),
                 true, "#444444"};
  SvgSeries cos_2t{"cos 2*theta", curve_points(max_deg, [](double deg) {
                     return std::cos(2.0 * deg_to_rad(deg));
                   }),
                   true, "#444444"};
  write_text_file(std::filesystem::path(spec.output_dir) / "fig3.svg",
                  render_svg_chart("Normalized coincidences", "theta (deg)",
                                   "2 N_pp / N", {cos2, pp}));
  write_text_file(std::filesystem::path(spec.output_dir) / "fig4.svg",
                  render_svg_chart("Pair correlation", "theta (deg)", "gamma",
                                   {cos_2t, gm}));
}

int run_malus_cmd(const RunSpec& spec, const CliOptions& opts) {
  MalusConfig config;
  config.grid = AngleGrid::from_list(spec.angles_deg);
  config.photons_per_angle = spec.count_per_angle;
  config.master_seed = spec.seed;
  config.distribution = spec.distribution;
  config.criterion = spec.criterion;

  const std::vector<ResultRow> rows = run_malus(config, opts.threads);
  const RunVerdict verdict = malus_verdict(rows, spec);

  const std::filesystem::path out_dir(spec.output_dir);
  write_text_file(out_dir / "results.csv", malus_results_csv(rows));
  write_text_file(out_dir / "summary.json", malus_summary_json(rows, spec, verdict));
  if (opts.svg) write_malus_svg(spec, rows);

  std::printf("malus: %lld photons/angle, %zu angles, seed %llu, %s, %s\n",
              spec.count_per_angle, rows.size(),
              static_cast<unsigned long long>(spec.seed),
              distribution_name(spec.distribution), criterion_name(spec.criterion));
  std::printf("%8s %8s %8s %8s %8s %12s %12s\n", "theta", "n_pp", "n_pm", "n_mp",
              "n_mm", "plus_ref", "minus_ref");
  for (const ResultRow& row : rows)
    std::printf("%8s %8llu %8llu %8llu %8llu %12s %12s\n",
                format_g9(row.theta_deg).c_str(),
                static_cast<unsigned long long>(row.counts.n_pp),
                static_cast<unsigned long long>(row.counts.n_pm),
                static_cast<unsigned long long>(row.counts.n_mp),
                static_cast<unsigned long long>(row.counts.n_mm),
                format_g9(row.malus_plus_ref).c_str(),
                format_g9(row.malus_minus_ref).c_str());
  print_fit_lines(verdict);
  std::printf("results written to %s\n", spec.output_dir.c_str());
  return verdict.pass ? 0 : 2;
}

int run_coincidence_cmd(const RunSpec& spec, const CliOptions& opts) {
  const std::vector<ResultRow> rows =
      run_coincidence(coincidence_config(spec), opts.threads);
  const RunVerdict verdict = coincidence_verdict(rows, spec);

  const std::filesystem::path out_dir(spec.output_dir);
  write_text_file(out_dir / "results.csv", coincidence_results_csv(rows));
  write_text_file(out_dir / "summary.json",
                  coincidence_summary_json(rows, spec, verdict));
  if (opts.svg) write_coincidence_svg(spec, rows);

  std::printf("coincidence: %lld pairs/angle, %zu angles, seed %llu, %s, %s, %s\n",
              spec.count_per_angle, rows.size(),
              static_cast<unsigned long long>(spec.seed),
              distribution_name(spec.distribution), criterion_name(spec.criterion),
              spec.coupled ? "coupled" : "uncoupled");
  std::printf("%8s %8s %8s %8s %8s %10s %10s %10s\n", "theta", "n_pp", "n_pm",
              "n_mp", "n_mm", "gamma", "gamma_ref", "norm_pp");
  for (const ResultRow& row : rows)
    std::printf("%8s %8llu %8llu %8llu %8llu %10s %10s %10s\n",
                format_g9(row.theta_deg).c_str(),
                static_cast<unsigned long long>(row.counts.n_pp),
                static_cast<unsigned long long>(row.counts.n_pm),
                static_cast<unsigned long long>(row.counts.n_mp),
                static_cast<unsigned long long>(row.counts.n_mm),
                format_g9(row.gamma).c_str(), format_g9(row.gamma_ref).c_str(),
                format_g9(row.normalized_pp).c_str());
  print_fit_lines(verdict);
  std::printf("results written to %s\n", spec.output_dir.c_str());
  return verdict.pass ? 0 : 2;
}

int run_chsh_cmd(const RunSpec& spec, const CliOptions& opts) {
  CoincidenceConfig config = coincidence_config(spec);
  const ChshResult result =
      chsh_run(config, spec.chsh_angles_deg[0], spec.chsh_angles_deg[1],
               spec.chsh_angles_deg[2], spec.chsh_angles_deg[3], opts.threads);
  const RunVerdict verdict = chsh_verdict(result, spec);

  const std::filesystem::path out_dir(spec.output_dir);
  write_text_file(out_dir / "results.csv", chsh_results_csv(result, spec));
  write_text_file(out_dir / "summary.json", chsh_summary_json(result, spec, verdict));

  std::printf("chsh: %lld pairs/setting, seed %llu, %s, %s, %s\n",
              spec.count_per_angle, static_cast<unsigned long long>(spec.seed),
              distribution_name(spec.distribution), criterion_name(spec.criterion),
              spec.coupled ? "coupled" : "uncoupled");
  std::printf("settings a1=%s a2=%s b1=%s b2=%s\n",
              format_g9(spec.chsh_angles_deg[0]).c_str(),
              format_g9(spec.chsh_angles_deg[1]).c_str(),
              format_g9(spec.chsh_angles_deg[2]).c_str(),
              format_g9(spec.chsh_angles_deg[3]).c_str());
  static const char* kNames[4] = {"E(a1,b1)", "E(a1,b2)", "E(a2,b1)", "E(a2,b2)"};
  for (std::size_t k = 0; k < 4; ++k)
    std::printf("%s = %-10s (relative angle %s deg)\n", kNames[k],
                format_g9(result.e_values[k]).c_str(),
                format_g9(result.setting_angles_deg[k]).c_str());
  std::printf("S = %s +- %s  (Bell limit 2 %s)\n", format_g9(result.s_value).c_str(),
              format_g9(result.s_sigma).c_str(),
              result.s_value > 2.0 ? "exceeded" : "not exceeded");
  print_fit_lines(verdict);
  std::printf("results written to %s\n", spec.output_dir.c_str());
  return verdict.pass ? 0 : 2;
}

int run_verify_cmd(const RunSpec& spec) {
  const std::vector<CheckResult> checks = run_verification(spec.seed);
  const std::filesystem::path out_dir(spec.output_dir);
  write_text_file(out_dir / "results.csv", verify_results_csv(checks));
  write_text_file(out_dir / "summary.json", verify_summary_json(checks, spec.seed));
  for (const CheckResult& check : checks)
    std::printf("[%s] %-28s %s\n", check.pass ? "pass" : "FAIL", check.name.c_str(),
                check.detail.c_str());
  const bool pass = all_passed(checks);
  std::printf("verification %s\n", pass ? "passed" : "FAILED");
  return pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quasi-deterministic analyzer Monte Carlo for photon polarization"};
  app.require_subcommand(1);

  CliOptions opts;
  CLI::App* malus = app.add_subcommand("malus", "Two analyzers in sequence");
  CLI::App* coincidence =
      app.add_subcommand("coincidence", "Two-wing pair coincidence counting");
  CLI::App* chsh = app.add_subcommand("chsh", "Four-setting CHSH evaluation");
  CLI::App* verify = app.add_subcommand("verify", "Run the built-in property suite");
  for (CLI::App* cmd : {malus, coincidence, chsh, verify})
    add_common_options(cmd, opts);

  CLI11_PARSE(app, argc, argv);

  const std::string experiment = app.get_subcommands().front()->get_name();
  try {
    const RunSpec spec = resolve_spec(experiment, opts);
    if (experiment == "malus") return run_malus_cmd(spec, opts);
    if (experiment == "coincidence") return run_coincidence_cmd(spec, opts);
    if (experiment == "chsh") return run_chsh_cmd(spec, opts);
    return run_verify_cmd(spec);
  } catch (const ConfigError& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  } catch (const std::invalid_argument& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  } catch (const IoError& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 3;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 3;
  }
}
