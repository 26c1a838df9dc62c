#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpol/analysis.hpp"
#include "qpol/config.hpp"
#include "qpol/experiments.hpp"
#include "qpol/verify.hpp"

namespace qpol {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Shortest stable text form used in every CSV cell: %.9g, C locale.
std::string format_g9(double value);

/// results.csv bodies. UTF-8, header row, LF line endings, 9 significant
/// digits; byte-identical for identical runs.
std::string malus_results_csv(const std::vector<ResultRow>& rows);
std::string coincidence_results_csv(const std::vector<ResultRow>& rows);
std::string chsh_results_csv(const ChshResult& result, const RunSpec& spec);

/// Fit verdicts that drive the CLI exit code. The expected curves follow
/// the configured model (distribution, criterion, coupling), so ablation
/// runs pass when they behave as predicted.
struct RunVerdict {
  std::vector<FitReport> fits;
  std::vector<std::string> fit_names;
  bool pass = true;
};

RunVerdict malus_verdict(const std::vector<ResultRow>& rows, const RunSpec& spec);
RunVerdict coincidence_verdict(const std::vector<ResultRow>& rows,
                               const RunSpec& spec);
RunVerdict chsh_verdict(const ChshResult& result, const RunSpec& spec);

/// summary.json bodies (pretty-printed, stable key order).
std::string malus_summary_json(const std::vector<ResultRow>& rows,
                               const RunSpec& spec, const RunVerdict& verdict);
std::string coincidence_summary_json(const std::vector<ResultRow>& rows,
                                     const RunSpec& spec, const RunVerdict& verdict);
std::string chsh_summary_json(const ChshResult& result, const RunSpec& spec,
                              const RunVerdict& verdict);
std::string verify_summary_json(const std::vector<CheckResult>& checks,
                                std::uint64_t seed);
std::string verify_results_csv(const std::vector<CheckResult>& checks);

/// Creates parent directories as needed; throws IoError on failure.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace qpol
