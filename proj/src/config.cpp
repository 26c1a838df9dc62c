#include "qpol/config.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

namespace qpol {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) { throw ConfigError(message); }

void reject_unknown_keys(const json& object, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (const auto& item : object.items())
    if (!allowed.count(item.key()))
      fail("config: unknown key \"" + item.key() + "\" in " + where);
}

double require_number(const json& value, const std::string& field) {
  if (!value.is_number()) fail("config: field \"" + field + "\" must be a number");
  const double v = value.get<double>();
  if (!std::isfinite(v)) fail("config: field \"" + field + "\" must be finite");
  return v;
}

std::vector<double> parse_angles(const json& value) {
  std::vector<double> angles;
  if (value.is_array()) {
    if (value.empty()) fail("config: \"angles_deg\" must not be empty");
    for (const auto& item : value)
      angles.push_back(require_number(item, "angles_deg[]"));
  } else if (value.is_object()) {
    reject_unknown_keys(value, {"start", "stop", "step"}, "\"angles_deg\"");
    for (const char* key : {"start", "stop", "step"})
      if (!value.contains(key))
        fail(std::string("config: \"angles_deg\" range form requires \"") + key + "\"");
    const double start = require_number(value["start"], "angles_deg.start");
    const double stop = require_number(value["stop"], "angles_deg.stop");
    const double step = require_number(value["step"], "angles_deg.step");
    if (!(step > 0.0)) fail("config: \"angles_deg.step\" must be > 0");
    if (stop < start) fail("config: \"angles_deg.stop\" must be >= start");
    for (int i = 0;; ++i) {
      const double v = start + static_cast<double>(i) * step;
      if (v > stop + 1e-9) break;
      angles.push_back(v);
    }
  } else {
    fail("config: \"angles_deg\" must be an array or a {start, stop, step} object");
  }

  double prev = -1.0;
  for (const double deg : angles) {
    if (deg < 0.0 || deg >= 360.0)
      fail("config: \"angles_deg\" values must lie in [0, 360)");
    if (deg <= prev) fail("config: \"angles_deg\" must be strictly increasing");
    prev = deg;
  }
  return angles;
}

SamplingDistribution parse_distribution(const json& value) {
  if (!value.is_object()) fail("config: \"distribution\" must be an object");
  reject_unknown_keys(value, {"type", "sigma_rad"}, "\"distribution\"");
  if (!value.contains("type")) fail("config: \"distribution\" requires \"type\"");
  const std::string type = value["type"].is_string()
                               ? value["type"].get<std::string>()
                               : std::string();
  if (type == "arccos_uniform") {
    if (value.contains("sigma_rad"))
      fail("config: \"sigma_rad\" applies to the gaussian distribution only");
    return SamplingDistribution::arccos_uniform();
  }
  if (type == "gaussian") {
    if (!value.contains("sigma_rad")) return SamplingDistribution::gaussian();
    const double sigma = require_number(value["sigma_rad"], "distribution.sigma_rad");
    if (!(sigma > 0.0)) fail("config: \"distribution.sigma_rad\" must be > 0");
    return SamplingDistribution::gaussian(sigma);
  }
  fail("config: \"distribution.type\" must be \"arccos_uniform\" or \"gaussian\"");
}

Criterion parse_criterion(const json& value) {
  const std::string name =
      value.is_string() ? value.get<std::string>() : std::string();
  if (name == "deterministic") return Criterion::Deterministic;
  if (name == "malus_probabilistic") return Criterion::MalusProbabilistic;
  fail("config: \"criterion\" must be \"deterministic\" or \"malus_probabilistic\"");
}

}  // namespace

RunSpec default_run_spec(std::string_view experiment) {
  RunSpec spec;
  spec.experiment = std::string(experiment);
  for (int deg = 0; deg <= 90; deg += 5)
    spec.angles_deg.push_back(static_cast<double>(deg));
  spec.count_per_angle = default_count(experiment);
  return spec;
}

long long default_count(std::string_view experiment) {
  if (experiment == "malus") return 40000;
  if (experiment == "chsh") return 100000;
  return 10000;
}

RunSpec parse_run_spec(const std::string& json_text,
                       std::string_view experiment) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& err) {
    fail(std::string("config: ") + err.what());
  }
  if (!doc.is_object()) fail("config: top level must be a JSON object");

  std::set<std::string> allowed = {"experiment",     "seed",       "angles_deg",
                                   "count_per_angle", "distribution", "criterion",
                                   "output_dir"};
  if (experiment == "coincidence" || experiment == "chsh") allowed.insert("coupled");
  if (experiment == "chsh") allowed.insert("chsh_angles_deg");
  reject_unknown_keys(doc, allowed, "the top-level object");

  RunSpec spec = default_run_spec(experiment);

  if (doc.contains("experiment")) {
    const json& value = doc["experiment"];
    if (!value.is_string() || value.get<std::string>() != experiment)
      fail("config: \"experiment\" is \"" +
           (value.is_string() ? value.get<std::string>() : std::string("<non-string>")) +
           "\" but the subcommand is \"" + std::string(experiment) + "\"");
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_integer())
      fail("config: \"seed\" must be an integer");
    if (doc["seed"].is_number_unsigned())
      spec.seed = doc["seed"].get<std::uint64_t>();
    else
      spec.seed = static_cast<std::uint64_t>(doc["seed"].get<long long>());
  }
  if (doc.contains("angles_deg")) spec.angles_deg = parse_angles(doc["angles_deg"]);
  if (doc.contains("count_per_angle")) {
    if (!doc["count_per_angle"].is_number_integer())
      fail("config: \"count_per_angle\" must be an integer");
    spec.count_per_angle = doc["count_per_angle"].get<long long>();
    if (spec.count_per_angle < 1) fail("config: \"count_per_angle\" must be >= 1");
  }
  if (doc.contains("distribution"))
    spec.distribution = parse_distribution(doc["distribution"]);
  if (doc.contains("criterion")) spec.criterion = parse_criterion(doc["criterion"]);
  if (doc.contains("coupled")) {
    if (!doc["coupled"].is_boolean()) fail("config: \"coupled\" must be a boolean");
    spec.coupled = doc["coupled"].get<bool>();
  }
  if (doc.contains("chsh_angles_deg")) {
    const json& value = doc["chsh_angles_deg"];
    if (!value.is_array() || value.size() != 4)
      fail("config: \"chsh_angles_deg\" must hold exactly 4 angles (a1, a2, b1, b2)");
    for (std::size_t i = 0; i < 4; ++i) {
      const double deg = require_number(value[i], "chsh_angles_deg[]");
      if (deg < 0.0 || deg >= 360.0)
        fail("config: \"chsh_angles_deg\" values must lie in [0, 360)");
      spec.chsh_angles_deg[i] = deg;
    }
  }
  if (doc.contains("output_dir")) {
    if (!doc["output_dir"].is_string() || doc["output_dir"].get<std::string>().empty())
      fail("config: \"output_dir\" must be a non-empty string");
    spec.output_dir = doc["output_dir"].get<std::string>();
  }
  return spec;
}

const char* criterion_name(Criterion criterion) {
  return criterion == Criterion::Deterministic ? "deterministic"
                                               : "malus_probabilistic";
}

const char* distribution_name(const SamplingDistribution& dist) {
  return dist.kind == SamplingDistribution::Kind::ArccosUniform ? "arccos_uniform"
                                                                : "gaussian";
}

}  // namespace qpol
