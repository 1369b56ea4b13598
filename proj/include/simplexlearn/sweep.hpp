#pragma once

#include "simplexlearn/config.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace simplexlearn {

enum class TruthKind { kStandard, kRandom, kFile };

// Grid axes hold one or more values each; the grid is their Cartesian
// product with the last axis varying fastest. Remaining run keys are shared
// by every cell.
struct SweepConfig {
  std::vector<int> dim = {1};
  std::vector<std::uint64_t> n = {2000};
  // Exactly one of sigma and snr is non-empty.
  std::vector<double> sigma;
  std::vector<double> snr;
  std::vector<double> eps_rep = {0.2};
  std::vector<double> delta = {0.1};
  // Entries may be "auto" (tight values of the truth).
  std::vector<std::string> theta_lower = {"auto"};
  std::vector<std::string> theta_upper = {"auto"};
  std::vector<std::string> covering = {"grid"};
  std::vector<std::uint64_t> seeds = {0};
  TruthKind truth = TruthKind::kStandard;
  std::string truth_path;
  std::uint64_t truth_seed = 0;
  ConfigMap run;  // shared run keys

  std::size_t cells() const;
};

// Keys: dim, n, sigma | snr, eps_rep, delta, theta_lower, theta_upper,
// covering (comma lists), seeds ("a..b" inclusive or a list), truth
// (standard | random | <path>), truth_seed, plus any run config key other
// than seed and truth.
SweepConfig sweep_config_from_map(const ConfigMap& map);

struct SweepRow {
  std::size_t cell = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> fields;  // in sweep_columns() order
};

const std::vector<std::string>& sweep_columns();

// One row per (cell, seed) in grid order, seeds innermost. Trials run in
// parallel; failures become rows with the error column set.
std::vector<SweepRow> run_sweep(const SweepConfig& config, int threads = 1);

std::string sweep_to_csv(const std::vector<SweepRow>& rows);

}  // namespace simplexlearn
