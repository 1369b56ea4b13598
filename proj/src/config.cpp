#include "simplexlearn/config.hpp"

#include "simplexlearn/error.hpp"
#include "simplexlearn/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace simplexlearn {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::pair<std::string, std::string> split_assignment(std::string_view line) {
  const auto eq = line.find('=');
  require(eq != std::string_view::npos, ErrorCode::kParameter,
          "expected 'key = value', got '" + trim(line) + "'");
  std::string key = trim(line.substr(0, eq));
  std::string value = trim(line.substr(eq + 1));
  require(!key.empty(), ErrorCode::kParameter, "empty key in '" + trim(line) + "'");
  return {key, value};
}

std::optional<double> optional_real(const ConfigMap& map, const std::string& key) {
  const auto it = map.find(key);
  if (it == map.end() || it->second.empty() || it->second == "auto") return std::nullopt;
  return parse_real(key, it->second);
}

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

ConfigMap parse_config(std::string_view text) {
  ConfigMap map;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    if (trim(line).empty()) continue;
    auto [key, value] = split_assignment(line);
    map[key] = value;
  }
  return map;
}

ConfigMap load_config(const std::string& path) { return parse_config(io::read_file(path)); }

void apply_override(ConfigMap& map, std::string_view assignment) {
  auto [key, value] = split_assignment(assignment);
  map[key] = value;
}

std::string_view snr_mode_name(SnrMode m) {
  switch (m) {
    case SnrMode::kAuto: return "auto";
    case SnrMode::kOracle: return "oracle";
    case SnrMode::kConfig: return "config";
    case SnrMode::kPlugIn: return "plug-in";
  }
  return "auto";
}

SnrMode parse_snr_mode(std::string_view name) {
  if (name == "auto") return SnrMode::kAuto;
  if (name == "oracle") return SnrMode::kOracle;
  if (name == "config") return SnrMode::kConfig;
  if (name == "plug-in" || name == "plugin") return SnrMode::kPlugIn;
  fail(ErrorCode::kParameter, "unknown snr_mode '" + std::string(name) +
                                  "' (expected auto, oracle, config or plug-in)");
}

double parse_real(std::string_view key, std::string_view value) {
  const std::string v = trim(value);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  require(ec == std::errc() && ptr == v.data() + v.size() && std::isfinite(out),
          ErrorCode::kParameter, std::string(key) + ": not a finite number: '" + v + "'");
  return out;
}

std::uint64_t parse_count(std::string_view key, std::string_view value) {
  const std::string v = trim(value);
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec == std::errc() && ptr == v.data() + v.size()) return out;
  // Accept integral values written in floating point, e.g. 1e7.
  const double d = parse_real(key, v);
  require(d >= 0.0 && d == std::floor(d) && d < 1.8e19, ErrorCode::kParameter,
          std::string(key) + ": not a nonnegative integer: '" + v + "'");
  return static_cast<std::uint64_t>(d);
}

bool parse_bool(std::string_view key, std::string_view value) {
  const std::string v = trim(value);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  fail(ErrorCode::kParameter, std::string(key) + ": not a boolean: '" + v + "'");
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= value.size()) {
    const auto c = value.find(',', pos);
    const std::string item =
        trim(value.substr(pos, c == std::string_view::npos ? std::string_view::npos : c - pos));
    if (!item.empty()) out.push_back(item);
    if (c == std::string_view::npos) break;
    pos = c + 1;
  }
  return out;
}

const std::vector<std::string>& run_config_keys() {
  static const std::vector<std::string> keys = {
      "seed",         "theta_lower",   "theta_upper",   "eps_rep",
      "delta",        "covering",      "snr_mode",      "snr",
      "vol_root",     "plug_in_floor", "strict",        "iso_filter",
      "iso_slack",    "measure",       "mc_budget",     "covering_cap",
      "candidate_cap", "contest_record_limit", "tv_budget", "truth"};
  return keys;
}

RunConfig run_config_from_map(const ConfigMap& map) {
  const auto& keys = run_config_keys();
  for (const auto& [k, v] : map)
    require(std::find(keys.begin(), keys.end(), k) != keys.end(), ErrorCode::kParameter,
            "unknown config key '" + k + "'");
  RunConfig c;
  auto get = [&](const std::string& k) -> const std::string* {
    const auto it = map.find(k);
    return it == map.end() ? nullptr : &it->second;
  };
  if (auto v = get("seed")) c.seed = parse_count("seed", *v);
  c.theta_lower = optional_real(map, "theta_lower");
  c.theta_upper = optional_real(map, "theta_upper");
  if (auto v = get("eps_rep")) c.eps_rep = parse_real("eps_rep", *v);
  if (auto v = get("delta")) c.delta = parse_real("delta", *v);
  if (auto v = get("covering")) {
    try {
      c.covering = parse_cover_method(*v);
    } catch (const Error& e) {
      fail(ErrorCode::kParameter, std::string("covering: ") + e.what());
    }
  }
  if (auto v = get("snr_mode")) c.snr_mode = parse_snr_mode(*v);
  c.snr = optional_real(map, "snr");
  c.vol_root = optional_real(map, "vol_root");
  if (auto v = get("plug_in_floor")) c.plug_in_floor = parse_real("plug_in_floor", *v);
  if (auto v = get("strict")) c.strict = parse_bool("strict", *v);
  if (auto v = get("iso_filter")) c.iso_filter = parse_bool("iso_filter", *v);
  if (auto v = get("iso_slack")) c.iso_slack = parse_real("iso_slack", *v);
  if (auto v = get("measure")) {
    try {
      c.measure = parse_measure_mode(*v);
    } catch (const Error& e) {
      fail(ErrorCode::kParameter, std::string("measure: ") + e.what());
    }
  }
  if (auto v = get("mc_budget")) c.mc_budget = parse_count("mc_budget", *v);
  if (auto v = get("covering_cap")) c.covering_cap = parse_count("covering_cap", *v);
  if (auto v = get("candidate_cap")) c.candidate_cap = parse_count("candidate_cap", *v);
  if (auto v = get("contest_record_limit"))
    c.contest_record_limit = parse_count("contest_record_limit", *v);
  if (auto v = get("tv_budget")) c.tv_budget = parse_count("tv_budget", *v);
  if (auto v = get("truth")) c.truth = *v;
  c.validate();
  return c;
}

void RunConfig::validate() const {
  auto check = [](bool ok, const std::string& msg) { require(ok, ErrorCode::kParameter, msg); };
  if (theta_lower) check(*theta_lower > 0.0, "theta_lower must be positive");
  if (theta_upper) check(*theta_upper > 0.0, "theta_upper must be positive");
  check(eps_rep > 0.0 && eps_rep < 1.0, "eps_rep must lie in (0, 1)");
  check(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
  if (snr) check(*snr > 0.0, "snr must be positive");
  if (vol_root) check(*vol_root > 0.0, "vol_root must be positive");
  check(plug_in_floor >= 0.0, "plug_in_floor must be nonnegative");
  check(iso_slack >= 1.0, "iso_slack must be at least 1");
  check(mc_budget >= 1, "mc_budget must be positive");
  check(covering_cap >= 1, "covering_cap must be positive");
  check(candidate_cap >= 1, "candidate_cap must be positive");
  check(tv_budget >= 1, "tv_budget must be positive");
  if (snr_mode == SnrMode::kConfig)
    check(snr.has_value() != vol_root.has_value(),
          "snr_mode = config needs exactly one of snr and vol_root");
}

nlohmann::json run_config_to_json(const RunConfig& c) {
  return {{"seed", c.seed},
          {"theta_lower", optional_json(c.theta_lower)},
          {"theta_upper", optional_json(c.theta_upper)},
          {"eps_rep", c.eps_rep},
          {"delta", c.delta},
          {"covering", cover_method_name(c.covering)},
          {"snr_mode", snr_mode_name(c.snr_mode)},
          {"snr", optional_json(c.snr)},
          {"vol_root", optional_json(c.vol_root)},
          {"plug_in_floor", c.plug_in_floor},
          {"strict", c.strict},
          {"iso_filter", c.iso_filter},
          {"iso_slack", c.iso_slack},
          {"measure", measure_mode_name(c.measure)},
          {"mc_budget", c.mc_budget},
          {"covering_cap", c.covering_cap},
          {"candidate_cap", c.candidate_cap},
          {"contest_record_limit", c.contest_record_limit},
          {"tv_budget", c.tv_budget},
          {"truth", c.truth}};
}

}  // namespace simplexlearn
