#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qpol/analyzer.hpp"

namespace qpol {

/// Configuration problem: malformed JSON, unknown key, value out of range,
/// or an experiment mismatch. The message names the offending field (and
/// the line for parse errors).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A fully resolved run description, as read from a JSON config file and
/// adjusted by command-line overrides.
struct RunSpec {
  std::string experiment;  ///< malus | coincidence | chsh | verify
  std::uint64_t seed = 1;
  std::vector<double> angles_deg;  ///< default 0..90 step 5
  long long count_per_angle = 0;   ///< 0 = per-experiment default
  SamplingDistribution distribution{};
  Criterion criterion = Criterion::Deterministic;
  bool coupled = true;
  std::array<double, 4> chsh_angles_deg{0.0, 45.0, 22.5, 67.5};
  std::string output_dir = "qpol_out";
};

/// Defaults for a bare subcommand run with no config file.
RunSpec default_run_spec(std::string_view experiment);

/// Parse and validate a JSON config document. Unknown keys are rejected;
/// every numeric range is checked before anything executes. The document's
/// "experiment" key, when present, must match the subcommand.
RunSpec parse_run_spec(const std::string& json_text,
                       std::string_view experiment);

/// Count used when the config gives none: 40000 photons for malus, 10000
/// pairs for coincidence, 100000 pairs per setting for chsh.
long long default_count(std::string_view experiment);

const char* criterion_name(Criterion criterion);
const char* distribution_name(const SamplingDistribution& dist);

}  // namespace qpol
