#include "qpol/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace qpol {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json distribution_json(const SamplingDistribution& dist) {
  ordered_json out;
  out["type"] = distribution_name(dist);
  if (dist.kind == SamplingDistribution::Kind::Gaussian)
    out["sigma_rad"] = dist.sigma;
  return out;
}

ordered_json fit_json(const FitReport& fit) {
  ordered_json out;
  out["chi_square"] = fit.chi_square;
  out["degrees_of_freedom"] = fit.degrees_of_freedom;
  out["reduced_chi_square"] = fit.reduced_chi_square;
  out["max_abs_residual_sigmas"] = fit.max_abs_residual_sigmas;
  out["pass"] = fit.pass;
  return out;
}

ordered_json common_summary(const RunSpec& spec) {
  ordered_json out;
  out["experiment"] = spec.experiment;
  out["seed"] = spec.seed;
  out["count_per_angle"] = spec.count_per_angle;
  out["distribution"] = distribution_json(spec.distribution);
  out["criterion"] = criterion_name(spec.criterion);
  return out;
}

void append_fits(ordered_json& out, const RunVerdict& verdict) {
  ordered_json fits;
  for (std::size_t i = 0; i < verdict.fits.size(); ++i)
    fits[verdict.fit_names[i]] = fit_json(verdict.fits[i]);
  out["fits"] = fits;
  out["pass"] = verdict.pass;
}

// Largest and root-mean-square deviation of a row quantity from a model curve.
struct Deviation {
  double max_abs = 0.0;
  double rms = 0.0;
};

template <typename Value, typename Model>
Deviation deviation(const std::vector<ResultRow>& rows, Value value, Model model) {
  Deviation dev;
  double sum_sq = 0.0;
  for (const ResultRow& row : rows) {
    const double d = value(row) - model(row);
    dev.max_abs = std::max(dev.max_abs, std::fabs(d));
    sum_sq += d * d;
  }
  dev.rms = std::sqrt(sum_sq / static_cast<double>(rows.size()));
  return dev;
}

}  // namespace

std::string format_g9(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.9g", value);
  return buffer;
}

std::string malus_results_csv(const std::vector<ResultRow>& rows) {
  std::string out = "theta_deg,n_pp,n_pm,n_mp,n_mm,malus_plus_ref,malus_minus_ref\n";
  for (const ResultRow& row : rows) {
    out += format_g9(row.theta_deg);
    out += ',' + std::to_string(row.counts.n_pp);
    out += ',' + std::to_string(row.counts.n_pm);
    out += ',' + std::to_string(row.counts.n_mp);
    out += ',' + std::to_string(row.counts.n_mm);
    out += ',' + format_g9(row.malus_plus_ref);
    out += ',' + format_g9(row.malus_minus_ref);
    out += '\n';
  }
  return out;
}

std::string coincidence_results_csv(const std::vector<ResultRow>& rows) {
  std::string out =
      "theta_deg,n_pp,n_pm,n_mp,n_mm,gamma,gamma_ref,gamma_sigma,norm_pp,norm_pp_ref\n";
  for (const ResultRow& row : rows) {
    const double theta = deg_to_rad(row.theta_deg);
    const double cos_theta = std::cos(theta);
    out += format_g9(row.theta_deg);
    out += ',' + std::to_string(row.counts.n_pp);
    out += ',' + std::to_string(row.counts.n_pm);
    out += ',' + std::to_string(row.counts.n_mp);
    out += ',' + std::to_string(row.counts.n_mm);
    out += ',' + format_g9(row.gamma);
    out += ',' + format_g9(row.gamma_ref);
    out += ',' + format_g9(row.gamma_sigma);
    out += ',' + format_g9(row.normalized_pp);
    out += ',' + format_g9(cos_theta * cos_theta);
    out += '\n';
  }
  return out;
}

std::string chsh_results_csv(const ChshResult& result, const RunSpec& spec) {
  static const char* kSettingNames[4] = {"a1_b1", "a1_b2", "a2_b1", "a2_b2"};
  const double a[4] = {spec.chsh_angles_deg[0], spec.chsh_angles_deg[0],
                       spec.chsh_angles_deg[1], spec.chsh_angles_deg[1]};
  const double b[4] = {spec.chsh_angles_deg[2], spec.chsh_angles_deg[3],
                       spec.chsh_angles_deg[2], spec.chsh_angles_deg[3]};
  std::string out =
      "setting,a_deg,b_deg,theta_deg,n_pp,n_pm,n_mp,n_mm,e_value,e_ref\n";
  for (std::size_t k = 0; k < 4; ++k) {
    const CountTable& counts = result.counts[k];
    out += kSettingNames[k];
    out += ',' + format_g9(a[k]);
    out += ',' + format_g9(b[k]);
    out += ',' + format_g9(result.setting_angles_deg[k]);
    out += ',' + std::to_string(counts.n_pp);
    out += ',' + std::to_string(counts.n_pm);
    out += ',' + std::to_string(counts.n_mp);
    out += ',' + std::to_string(counts.n_mm);
    out += ',' + format_g9(result.e_values[k]);
    out += ',' + format_g9(std::cos(2.0 * deg_to_rad(result.setting_angles_deg[k])));
    out += '\n';
  }
  return out;
}

RunVerdict malus_verdict(const std::vector<ResultRow>& rows, const RunSpec& spec) {
  const double n = static_cast<double>(spec.count_per_angle);
  std::vector<double> observed_pp, observed_mp, expected_pp, expected_mp;
  for (const ResultRow& row : rows) {
    const double plus_fraction =
        model_plus_fraction(row.theta_deg, spec.distribution, spec.criterion);
    observed_pp.push_back(static_cast<double>(row.counts.n_pp));
    observed_mp.push_back(static_cast<double>(row.counts.n_mp));
    expected_pp.push_back(0.5 * n * plus_fraction);
    expected_mp.push_back(0.5 * n * (1.0 - plus_fraction));
  }
  RunVerdict verdict;
  verdict.fit_names = {"n_pp", "n_mp"};
  verdict.fits.push_back(chi_square_fit(observed_pp, expected_pp, n, 1.0));
  verdict.fits.push_back(chi_square_fit(observed_mp, expected_mp, n, 1.0));
  verdict.pass = verdict.fits[0].pass && verdict.fits[1].pass;
  return verdict;
}

RunVerdict coincidence_verdict(const std::vector<ResultRow>& rows,
                               const RunSpec& spec) {
  const double n = static_cast<double>(spec.count_per_angle);
  std::vector<double> observed_pp, expected_pp;
  for (const ResultRow& row : rows) {
    const double g = model_gamma(row.theta_deg, spec.distribution, spec.criterion,
                                 spec.coupled);
    observed_pp.push_back(static_cast<double>(row.counts.n_pp));
    // marginals are 1/2 per wing, so P(+,+) = (1 + gamma) / 4
    expected_pp.push_back(0.25 * n * (1.0 + g));
  }
  RunVerdict verdict;
  verdict.fit_names = {"n_pp"};
  verdict.fits.push_back(chi_square_fit(observed_pp, expected_pp, n, 1.0));
  verdict.pass = verdict.fits[0].pass;
  return verdict;
}

RunVerdict chsh_verdict(const ChshResult& result, const RunSpec& spec) {
  std::array<double, 4> e_model{};
  for (std::size_t k = 0; k < 4; ++k)
    e_model[k] = model_gamma(result.setting_angles_deg[k], spec.distribution,
                             spec.criterion, spec.coupled);
  const double s_model =
      std::fabs(e_model[0] - e_model[1]) + std::fabs(e_model[2] + e_model[3]);

  RunVerdict verdict;
  FitReport fit;
  fit.degrees_of_freedom = 1;
  const double sigma = result.s_sigma > 0.0 ? result.s_sigma : 1e-12;
  fit.max_abs_residual_sigmas = std::fabs(result.s_value - s_model) / sigma;
  fit.chi_square = fit.max_abs_residual_sigmas * fit.max_abs_residual_sigmas;
  fit.reduced_chi_square = fit.chi_square;
  fit.pass = fit.max_abs_residual_sigmas <= 5.0;
  verdict.fit_names = {"s_value_vs_model"};
  verdict.fits.push_back(fit);
  verdict.pass = fit.pass;
  return verdict;
}

std::string malus_summary_json(const std::vector<ResultRow>& rows,
                               const RunSpec& spec, const RunVerdict& verdict) {
  ordered_json out = common_summary(spec);
  out["angles_deg"] = spec.angles_deg;
  out["rows"] = rows.size();
  append_fits(out, verdict);
  return out.dump(2) + "\n";
}

std::string coincidence_summary_json(const std::vector<ResultRow>& rows,
                                     const RunSpec& spec,
                                     const RunVerdict& verdict) {
  ordered_json out = common_summary(spec);
  out["coupled"] = spec.coupled;
  out["angles_deg"] = spec.angles_deg;

  const auto gamma_dev = deviation(
      rows, [](const ResultRow& r) { return r.gamma; },
      [&](const ResultRow& r) {
        return model_gamma(r.theta_deg, spec.distribution, spec.criterion,
                           spec.coupled);
      });
  const auto pp_dev = deviation(
      rows, [](const ResultRow& r) { return r.normalized_pp; },
      [&](const ResultRow& r) {
        return 0.5 * (1.0 + model_gamma(r.theta_deg, spec.distribution,
                                        spec.criterion, spec.coupled));
      });
  out["gamma_max_abs_dev"] = gamma_dev.max_abs;
  out["gamma_rms_dev"] = gamma_dev.rms;
  out["norm_pp_max_abs_dev"] = pp_dev.max_abs;
  out["norm_pp_rms_dev"] = pp_dev.rms;
  append_fits(out, verdict);
  return out.dump(2) + "\n";
}

std::string chsh_summary_json(const ChshResult& result, const RunSpec& spec,
                              const RunVerdict& verdict) {
  ordered_json out = common_summary(spec);
  out["coupled"] = spec.coupled;
  out["settings_deg"] = {{"a1", spec.chsh_angles_deg[0]},
                         {"a2", spec.chsh_angles_deg[1]},
                         {"b1", spec.chsh_angles_deg[2]},
                         {"b2", spec.chsh_angles_deg[3]}};
  out["relative_angles_deg"] = result.setting_angles_deg;
  out["e_values"] = result.e_values;
  out["s_value"] = result.s_value;
  out["s_sigma"] = result.s_sigma;
  out["exceeds_bell_limit"] = result.s_value > 2.0;
  out["significance_sigmas_above_2"] =
      result.s_sigma > 0.0 ? (result.s_value - 2.0) / result.s_sigma : 0.0;
  append_fits(out, verdict);
  return out.dump(2) + "\n";
}

std::string verify_summary_json(const std::vector<CheckResult>& checks,
                                std::uint64_t seed) {
  ordered_json out;
  out["experiment"] = "verify";
  out["seed"] = seed;
  ordered_json items = ordered_json::array();
  bool pass = true;
  for (const CheckResult& check : checks) {
    ordered_json item;
    item["name"] = check.name;
    item["pass"] = check.pass;
    item["detail"] = check.detail;
    items.push_back(item);
    pass = pass && check.pass;
  }
  out["checks"] = items;
  out["pass"] = pass;
  return out.dump(2) + "\n";
}

std::string verify_results_csv(const std::vector<CheckResult>& checks) {
  std::string out = "check,pass,detail\n";
  for (const CheckResult& check : checks) {
    out += check.name;
    out += check.pass ? ",1," : ",0,";
    out += check.detail;
    out += '\n';
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream stream(path, std::ios::binary);
  if (!stream) throw IoError("cannot open \"" + path.string() + "\" for writing");
  stream.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!stream) throw IoError("failed writing \"" + path.string() + "\"");
}

}  // namespace qpol
