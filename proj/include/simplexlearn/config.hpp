#pragma once

#include "simplexlearn/metrics.hpp"
#include "simplexlearn/quantize.hpp"

#include "json.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace simplexlearn {

// Flat "key = value" text. Blank lines and anything after '#' are ignored.
// Later assignments replace earlier ones.
using ConfigMap = std::map<std::string, std::string>;

ConfigMap parse_config(std::string_view text);
ConfigMap load_config(const std::string& path);
// Applies one "key=value" override on top of `map`.
void apply_override(ConfigMap& map, std::string_view assignment);

enum class SnrMode { kAuto, kOracle, kConfig, kPlugIn };
std::string_view snr_mode_name(SnrMode m);
SnrMode parse_snr_mode(std::string_view name);

struct RunConfig {
  std::uint64_t seed = 0;
  // Unset means: the tight values of the truth simplex.
  std::optional<double> theta_lower;
  std::optional<double> theta_upper;
  double eps_rep = 0.2;
  double delta = 0.1;
  CoverMethod covering = CoverMethod::kGrid;
  // auto: oracle with a truth simplex, config when snr or vol_root is set,
  // plug-in otherwise.
  SnrMode snr_mode = SnrMode::kAuto;
  std::optional<double> snr;
  std::optional<double> vol_root;
  double plug_in_floor = 0.0;
  bool strict = false;
  bool iso_filter = true;
  double iso_slack = 2.0;
  MeasureMode measure = MeasureMode::kAuto;
  std::size_t mc_budget = kDefaultMcBudget;
  std::uint64_t covering_cap = kDefaultCoveringCap;
  std::uint64_t candidate_cap = kDefaultCandidateCap;
  std::size_t contest_record_limit = 100;
  std::size_t tv_budget = 200'000;
  std::string truth;

  void validate() const;
};

const std::vector<std::string>& run_config_keys();
// Unknown keys and malformed values are parameter errors.
RunConfig run_config_from_map(const ConfigMap& map);
nlohmann::json run_config_to_json(const RunConfig& c);

// Value parsers shared with the sweep configuration.
double parse_real(std::string_view key, std::string_view value);
std::uint64_t parse_count(std::string_view key, std::string_view value);
bool parse_bool(std::string_view key, std::string_view value);
std::vector<std::string> split_list(std::string_view value);

}  // namespace simplexlearn
