#pragma once

#include "simplexlearn/rng.hpp"
#include "simplexlearn/simplex.hpp"

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace simplexlearn {

// kAuto resolves to exact for K <= 2 and Monte Carlo otherwise.
enum class MeasureMode { kExact, kMc, kAuto };
std::string_view measure_mode_name(MeasureMode m);
MeasureMode parse_measure_mode(std::string_view name);
MeasureMode resolve_mode(MeasureMode m, int dim);

inline constexpr std::size_t kDefaultMcBudget = 20'000;

struct Estimate {
  double value = 0.0;
  double standard_error = 0.0;
};

enum class TvMethod { kExact, kMc, kNestedMc };
std::string_view tv_method_name(TvMethod m);

struct TvEstimate {
  double value = 0.0;
  double standard_error = 0.0;
  TvMethod method = TvMethod::kExact;
  std::size_t outer_budget = 0;
  std::size_t inner_budget = 0;
};

// Exact intersection volume for K <= 2: interval overlap at K = 1, convex
// clipping plus shoelace area at K = 2.
double intersection_volume_exact(const Simplex& a, const Simplex& b);

// Exact mode requires K <= 2. Monte Carlo samples the smaller simplex and
// scales the hit fraction by its volume.
Estimate intersection_volume(const Simplex& a, const Simplex& b, MeasureMode mode,
                             std::size_t budget, RngStream& rng);

// TV between the uniform laws: 1 - I / max(Vol_a, Vol_b).
TvEstimate tv_uniform(const Simplex& a, const Simplex& b, MeasureMode mode, std::size_t budget,
                      RngStream& rng);
double tv_uniform_exact(const Simplex& a, const Simplex& b);

// How P(x + z in S), z ~ N(0, sigma^2 I), is estimated inside the nested
// estimator. kGaussianHit draws z and tests membership; the estimate lies in
// [0, 1], so the outer average stays unbiased. kKernel averages the Gaussian
// kernel over y ~ P_S and scales by Vol(S); it can exceed 1 and is then
// clamped, which biases the result upward at small budgets.
enum class InnerEstimator { kGaussianHit, kKernel };

// TV(G_S, P_S) = E_{x ~ P_S}[(1 - P(x + z in S))_+]. The standard error is
// taken from the outer loop.
inline constexpr std::size_t kDefaultNestedBudget = 5'000;

TvEstimate tv_noisy_vs_clean_mc(const Simplex& s, double sigma, RngStream& rng,
                                std::size_t outer_budget = kDefaultNestedBudget,
                                std::size_t inner_budget = kDefaultNestedBudget,
                                InnerEstimator inner = InnerEstimator::kGaussianHit);

// 3 (K+1) theta_upper / SNR * sqrt(K + sqrt(8 K log(SNR / (K+1)))).
double lemma3_bound(int dim, double theta_upper, double snr);

double sample_complexity_thm2_exact(int dim, double theta_upper, double radius,
                                    double vol_root, double eps2, double delta);
std::uint64_t sample_complexity_thm2(int dim, double theta_upper, double radius,
                                     double vol_root, double eps2, double delta);

// 144 theta_lower^4 e^4 ((K+1)(K+2)/K)^2 log(12/delta).
double thm3_ball_term(int dim, double theta_lower, double delta);
double sample_complexity_thm3_exact(int dim, double theta_lower, double theta_upper,
                                    double radius, double vol_root, double eps2, double delta);
std::uint64_t sample_complexity_thm3(int dim, double theta_lower, double theta_upper,
                                     double radius, double vol_root, double eps2, double delta);

// Upper bound on R / Vol^(1/K) for the containing ball at the given SNR:
// 2 e theta_lower^2 (K+2) sqrt((K+1)(K+2)) (1 + 1/(theta_lower SNR)) / sqrt(denominator).
double radius_cap_ratio(int dim, double theta_lower, double snr);

// |P_A - P_S|_TV <= c1 * eps1 + c2 * eps2 with probability >= 1 - delta.
struct GuaranteeRecord {
  double c1 = 4.0;
  double c2 = 7.0;
  double eps1 = 0.0;
  double eps2 = 0.0;
  double delta = 0.0;
  std::uint64_t n_required = 0;

  double bound() const { return c1 * eps1 + c2 * eps2; }
};

}  // namespace simplexlearn
