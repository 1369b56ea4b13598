#include "simplexlearn/pipeline.hpp"

#include "simplexlearn/error.hpp"
#include "simplexlearn/io.hpp"

#include <chrono>

namespace simplexlearn {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string hint_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInsufficientData: return "supply more samples or set strict = false";
    case ErrorCode::kSnrTooLow: return "reduce the noise or raise theta_lower";
    case ErrorCode::kDegenerateData: return "the samples have no spread; check the dataset";
    case ErrorCode::kFamilyTooLarge: return "raise eps_rep, lower K or raise covering_cap";
    case ErrorCode::kTooManyCandidates: return "raise eps_rep, lower K or raise candidate_cap";
    case ErrorCode::kEmptyFamily: return "raise iso_slack or set iso_filter = false";
    case ErrorCode::kInfeasibleParams: return "check theta_lower and theta_upper";
    case ErrorCode::kParameter: return "check the config values";
    default: return "see the message above";
  }
}

template <class Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    fail(e.code(), std::string("stage ") + name + ": " + e.what() + " (hint: " +
                       hint_for(e.code()) + ")");
  }
}

std::optional<NoiseModel> noise_model(const RunConfig& c, const std::optional<Simplex>& truth,
                                      double sigma) {
  switch (c.snr_mode) {
    case SnrMode::kOracle:
      require(truth.has_value(), ErrorCode::kParameter,
              "snr_mode = oracle needs a truth simplex");
      return NoiseModel::oracle(*truth, sigma);
    case SnrMode::kConfig:
      if (c.vol_root) return NoiseModel::from_vol_root(*c.vol_root, sigma);
      require(c.snr.has_value(), ErrorCode::kParameter,
              "snr_mode = config needs snr or vol_root");
      return NoiseModel::from_snr(*c.snr, sigma);
    case SnrMode::kPlugIn:
    case SnrMode::kAuto:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

std::string version_string() { return "simplexlearn 0.1.0"; }

RunResult learn(const NoisyDataset& data, const RunConfig& config, int threads) {
  const auto t_start = Clock::now();
  config.validate();
  RunConfig c = config;
  std::optional<Simplex> truth = data.truth;
  if (!truth && !c.truth.empty())
    truth = stage("truth", [&] { return io::load_simplex(c.truth); });
  if (truth)
    require(truth->dim() == data.dim, ErrorCode::kDimension,
            "truth simplex dimension differs from the dataset");

  if (!c.theta_lower || !c.theta_upper) {
    require(truth.has_value(), ErrorCode::kParameter,
            "theta_lower and theta_upper are required without a truth simplex");
    const IsoperimetryParams tight = truth->tight_isoperimetry();
    if (!c.theta_lower) c.theta_lower = tight.theta_lower;
    if (!c.theta_upper) c.theta_upper = tight.theta_upper;
  }
  const IsoperimetryParams params{*c.theta_lower, *c.theta_upper};
  if (c.snr_mode == SnrMode::kAuto) {
    if (truth) c.snr_mode = SnrMode::kOracle;
    else if (c.snr || c.vol_root) c.snr_mode = SnrMode::kConfig;
    else c.snr_mode = SnrMode::kPlugIn;
  }
  c.validate();

  const auto [first, second] = stage("split", [&] { return split_half(data); });

  auto t0 = Clock::now();
  const BoundingBall ball = stage("bounding", [&] {
    BoundingOptions opts;
    opts.delta = c.delta;
    opts.strict = c.strict;
    opts.plug_in_floor = c.plug_in_floor;
    return bounding_ball(first, params, noise_model(c, truth, data.sigma), opts);
  });
  StageTimings timings;
  timings.bound_ms = ms_since(t0);

  t0 = Clock::now();
  const QuantizationParams quant = stage("quantize", [&] {
    return QuantizationParams::make(data.dim, c.eps_rep, ball.diagnostics.vol_root_used,
                                    params.theta_upper, ball.diagnostics.snr_provenance);
  });
  const CoveringSet cov = stage("cover", [&] {
    if (c.covering == CoverMethod::kRandom) {
      RngStream rng(c.seed, stream_key(StreamKind::kCovering));
      return random_covering(ball, quant.eps_cov, rng, c.covering_cap);
    }
    return grid_covering(ball, quant.eps_cov, c.covering_cap);
  });
  timings.cover_ms = ms_since(t0);

  t0 = Clock::now();
  CandidateFilters filters;
  filters.candidate_cap = c.candidate_cap;
  if (c.iso_filter) filters.isoperimetry = params;
  filters.slack = c.iso_slack;
  const CandidateFamily family =
      stage("enumerate", [&] { return enumerate_candidates(cov, data.dim, filters, threads); });
  timings.enumerate_ms = ms_since(t0);

  t0 = Clock::now();
  const std::vector<Simplex> members = family.materialize();
  const SelectionReport selection = stage("select", [&] {
    TournamentOptions opts;
    opts.mode = c.measure;
    opts.mc_budget = c.mc_budget;
    opts.seed = c.seed;
    opts.delta = c.delta;
    opts.contest_record_limit = c.contest_record_limit;
    opts.threads = threads;
    return scheffe_tournament(members, second.points, opts);
  });
  timings.select_ms = ms_since(t0);

  RunResult r{.config = c,
              .learned = members[selection.winner],
              .ball = ball,
              .quantization = quant,
              .covering_size = cov.points.size(),
              .filters = family.filters(),
              .selection = selection,
              .n = data.size(),
              .first_half = first.size(),
              .second_half = second.size(),
              .tv_to_truth = {},
              .lemma3_bound = {},
              .guarantee = {},
              .timings = {},
              .warnings = {}};
  r.warnings = ball.diagnostics.warnings;

  if (truth) {
    r.tv_to_truth = stage("evaluate", [&] {
      RngStream rng(c.seed, stream_key(StreamKind::kMonteCarlo, 1));
      return tv_uniform(r.learned, *truth, c.measure, c.tv_budget, rng);
    });
  }
  const double theta_gap = truth ? truth->tight_isoperimetry().theta_upper : params.theta_upper;
  try {
    r.lemma3_bound = lemma3_bound(data.dim, theta_gap, ball.diagnostics.snr_used);
  } catch (const Error& e) {
    r.warnings.push_back(std::string("noise-gap bound unavailable: ") + e.what());
  }
  r.guarantee.eps1 = r.lemma3_bound.value_or(0.0);
  r.guarantee.eps2 = c.eps_rep;
  r.guarantee.delta = c.delta;
  try {
    r.guarantee.n_required =
        sample_complexity_thm3(data.dim, params.theta_lower, params.theta_upper, ball.radius,
                               quant.vol_root, c.eps_rep, c.delta);
  } catch (const Error& e) {
    r.warnings.push_back(std::string("sample-size requirement unavailable: ") + e.what());
  }
  timings.total_ms = ms_since(t_start);
  r.timings = timings;
  return r;
}

nlohmann::json run_result_to_json(const RunResult& r, bool include_timings) {
  using nlohmann::json;
  json j;
  j["version"] = version_string();
  j["config"] = run_config_to_json(r.config);
  j["data"] = {{"n", r.n}, {"first_half", r.first_half}, {"second_half", r.second_half}};
  j["learned"] = io::simplex_to_json(r.learned);
  j["ball"] = io::ball_to_json(r.ball);
  j["quantization"] = {{"eps_rep", r.quantization.eps_rep},
                       {"alpha", r.quantization.alpha},
                       {"vol_root", r.quantization.vol_root},
                       {"vol_root_provenance", provenance_name(r.quantization.vol_root_provenance)},
                       {"eps_cov", r.quantization.eps_cov},
                       {"covering_size", r.covering_size}};
  j["family"] = {{"M", r.selection.wins.size()}, {"filters", io::filter_record_to_json(r.filters)}};
  j["selection"] = io::selection_report_to_json(r.selection);
  if (r.tv_to_truth) j["tv_to_truth"] = io::tv_to_json(*r.tv_to_truth);
  j["lemma3_bound"] = r.lemma3_bound ? json(*r.lemma3_bound) : json(nullptr);
  j["guarantee"] = io::guarantee_to_json(r.guarantee);
  j["warnings"] = r.warnings;
  if (include_timings)
    j["timings_ms"] = {{"bound", r.timings.bound_ms},
                       {"cover", r.timings.cover_ms},
                       {"enumerate", r.timings.enumerate_ms},
                       {"select", r.timings.select_ms},
                       {"total", r.timings.total_ms}};
  return j;
}

}  // namespace simplexlearn
