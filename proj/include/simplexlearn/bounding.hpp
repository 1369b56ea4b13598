#pragma once

#include "simplexlearn/sampling.hpp"
#include "simplexlearn/simplex.hpp"
#include "simplexlearn/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace simplexlearn {

// SNR used in place of infinity when sigma == 0.
inline constexpr double kNoiselessSnr = 1e12;

enum class Provenance { kOracle, kPlugIn, kConfig };
std::string_view provenance_name(Provenance p);
Provenance parse_provenance(std::string_view name);

// sigma together with the simplex scale Vol^(1/K) it is measured against.
struct NoiseModel {
  double sigma = 0.0;
  double snr = kNoiselessSnr;
  double vol_root = 1.0;
  Provenance provenance = Provenance::kConfig;

  static NoiseModel oracle(const Simplex& truth, double sigma);
  static NoiseModel from_snr(double snr, double sigma);
  static NoiseModel from_vol_root(double vol_root, double sigma);
  // Inverts E[D] >= K^2 Vol^(2/K) / (4 e^2 (K+1)(K+2)) after removing the
  // K sigma^2 noise contribution; the result is clamped below at `floor`.
  static NoiseModel plug_in(double d_statistic, int dim, double sigma, double floor);

  void validate() const;
};

struct BoundingDiagnostics {
  double d_statistic = 0.0;
  std::size_t pairs = 0;
  double snr_used = 0.0;
  double vol_root_used = 0.0;
  Provenance snr_provenance = Provenance::kConfig;
  double delta_used = 0.0;
  double denominator = 0.0;
  std::size_t required_pairs = 0;
  bool heuristic = false;
  std::vector<std::string> warnings;
};

struct BoundingBall {
  Point center;
  double radius = 0.0;
  BoundingDiagnostics diagnostics;

  bool contains(const Point& x, double tol = 1e-12) const;
};

// (1/2m) sum_i |y_{2i} - y_{2i-1}|^2 over consecutive pairs.
double pair_statistic_D(const PointSet& points);
Point centroid_p(const PointSet& points);

// ceil(72 theta_lower^4 e^4 ((K+1)(K+2)/K)^2 log(12/delta)).
std::uint64_t min_samples_lemma1(int dim, double theta_lower, double delta);
double min_samples_lemma1_exact(int dim, double theta_lower, double delta);

// 1 + 4e^2 (K-2)/SNR^2 - 4/(theta_lower SNR).
double radius_denominator(int dim, double theta_lower, double snr);
// Smallest SNR above which radius_denominator stays positive; 0 if it is
// positive for every SNR.
double critical_snr(int dim, double theta_lower);

double bounding_radius(double d_statistic, int dim, const IsoperimetryParams& params,
                       const NoiseModel& noise);

struct BoundingOptions {
  double delta = 0.1;
  // Require at least min_samples_lemma1 pairs instead of tagging the ball as
  // heuristic.
  bool strict = false;
  // Lower clamp for the plug-in Vol^(1/K); <= 0 selects 1e-3 * sigma.
  double plug_in_floor = 0.0;
};

// Center and radius from the first half of the data. An empty `noise`
// selects the plug-in SNR computed from D and the dataset sigma.
BoundingBall bounding_ball(const NoisyDataset& first_half, const IsoperimetryParams& params,
                           const std::optional<NoiseModel>& noise,
                           const BoundingOptions& options = {});

}  // namespace simplexlearn
