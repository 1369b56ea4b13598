#pragma once

#include "simplexlearn/bounding.hpp"
#include "simplexlearn/config.hpp"
#include "simplexlearn/metrics.hpp"
#include "simplexlearn/quantize.hpp"
#include "simplexlearn/sampling.hpp"
#include "simplexlearn/select.hpp"
#include "simplexlearn/simplex.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace simplexlearn {

std::string version_string();

struct StageTimings {
  double bound_ms = 0.0;
  double cover_ms = 0.0;
  double enumerate_ms = 0.0;
  double select_ms = 0.0;
  double total_ms = 0.0;
};

struct RunResult {
  // Config with every automatic choice replaced by the value actually used.
  RunConfig config;
  Simplex learned;
  BoundingBall ball;
  QuantizationParams quantization;
  std::size_t covering_size = 0;
  FilterRecord filters;
  SelectionReport selection;
  std::size_t n = 0;
  std::size_t first_half = 0;
  std::size_t second_half = 0;
  std::optional<TvEstimate> tv_to_truth;
  std::optional<double> lemma3_bound;
  GuaranteeRecord guarantee;
  StageTimings timings;
  std::vector<std::string> warnings;
};

// Split in half, bound the first half, quantize the ball, enumerate the
// candidate family and run the tournament on the second half. Stage failures
// are rethrown with the stage name and a remediation hint.
RunResult learn(const NoisyDataset& data, const RunConfig& config, int threads = 1);

// Timings are wall-clock and therefore omitted unless requested.
nlohmann::json run_result_to_json(const RunResult& r, bool include_timings = false);

}  // namespace simplexlearn
