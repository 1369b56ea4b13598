#pragma once

#include "simplexlearn/metrics.hpp"
#include "simplexlearn/simplex.hpp"
#include "simplexlearn/types.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace simplexlearn {

// x in A_ij = {f_i > f_j}: inside S_i and either outside S_j or S_i is the
// smaller (denser) simplex. Equal densities never qualify.
bool scheffe_membership(std::size_t i, std::size_t j, const Point& x,
                        std::span<const Simplex> family);

struct ScheffeMeasures {
  double p_i = 0.0;  // P_i(A_ij)
  double p_j = 0.0;  // P_j(A_ij)
};

// Closed form from the two volumes and their intersection volume.
ScheffeMeasures scheffe_measures(double vol_i, double vol_j, double intersection);

// P_i(A_ij). Exact mode (K <= 2) has zero standard error; mc mode samples
// S_i and reports the binomial standard error.
Estimate candidate_measure_of_scheffe(std::size_t i, std::size_t j,
                                      std::span<const Simplex> family, MeasureMode mode,
                                      std::size_t budget, RngStream& rng);

// Fraction of samples satisfying the predicate.
double empirical_measure(const PointSet& samples,
                         const std::function<bool(const Point&)>& predicate);

// log(3 M^2 / delta) / (2 eps^2), natural log.
double min_samples_selection_exact(std::size_t candidates, double eps, double delta);
std::uint64_t min_samples_selection(std::size_t candidates, double eps, double delta);

// Accuracy implied by n samples: the eps solving n = min_samples_selection.
double selection_accuracy(std::size_t candidates, std::size_t n, double delta);

struct ContestRecord {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  double p_i = 0.0;
  double p_j = 0.0;
  double se_i = 0.0;
  double se_j = 0.0;
  double mu = 0.0;
  std::uint32_t winner = 0;
};

// |f_winner - g|_TV <= factor * min_i |f_i - g|_TV + additive, w.p. 1 - delta.
struct SelectionGuarantee {
  double factor = 3.0;
  double additive = 0.0;
  double eps = 0.0;
  double delta = 0.0;
  std::size_t n = 0;
  std::size_t candidates = 0;
};

struct SelectionReport {
  std::size_t winner = 0;
  std::vector<std::uint64_t> wins;
  // Upper-triangle contests (i < j) in row-major order; empty when the
  // family is larger than the record limit.
  std::vector<ContestRecord> contests;
  bool contests_recorded = false;
  MeasureMode mode = MeasureMode::kExact;
  SelectionGuarantee guarantee;
};

struct TournamentOptions {
  MeasureMode mode = MeasureMode::kAuto;
  std::size_t mc_budget = kDefaultMcBudget;
  std::uint64_t seed = 0;
  double delta = 0.1;
  std::size_t contest_record_limit = 100;
  int threads = 1;
};

// Minimum-distance tournament over every unordered pair {i < j}: i beats j
// iff |P_i(A_ij) - mu_n(A_ij)| <= |P_j(A_ij) - mu_n(A_ij)|. The winner has
// the most wins; ties go to the lower index.
SelectionReport scheffe_tournament(std::span<const Simplex> family, const PointSet& samples,
                                   const TournamentOptions& options = {});

}  // namespace simplexlearn
