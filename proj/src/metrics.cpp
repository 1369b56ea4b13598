#include "simplexlearn/metrics.hpp"

#include "simplexlearn/error.hpp"
#include "simplexlearn/sampling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace simplexlearn {
namespace {

constexpr double kE = std::numbers::e;

struct Vec2 {
  double x, y;
};

double cross(Vec2 o, Vec2 a, Vec2 b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

std::vector<Vec2> counter_clockwise(const Simplex& s) {
  std::vector<Vec2> p;
  for (int i = 0; i < 3; ++i) p.push_back({s.vertices()(0, i), s.vertices()(1, i)});
  if (cross(p[0], p[1], p[2]) < 0.0) std::swap(p[1], p[2]);
  return p;
}

// Clips a convex polygon against the half-plane left of edge a -> b.
std::vector<Vec2> clip_half_plane(const std::vector<Vec2>& poly, Vec2 a, Vec2 b) {
  std::vector<Vec2> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 cur = poly[i];
    const Vec2 prev = poly[(i + n - 1) % n];
    const double dc = cross(a, b, cur);
    const double dp = cross(a, b, prev);
    if (dc >= 0.0) {
      if (dp < 0.0) {
        const double t = dp / (dp - dc);
        out.push_back({prev.x + t * (cur.x - prev.x), prev.y + t * (cur.y - prev.y)});
      }
      out.push_back(cur);
    } else if (dp >= 0.0) {
      const double t = dp / (dp - dc);
      out.push_back({prev.x + t * (cur.x - prev.x), prev.y + t * (cur.y - prev.y)});
    }
  }
  return out;
}

double shoelace(const std::vector<Vec2>& poly) {
  double twice = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 p = poly[i];
    const Vec2 q = poly[(i + 1) % poly.size()];
    twice += p.x * q.y - q.x * p.y;
  }
  return 0.5 * std::abs(twice);
}

void check_same_dim(const Simplex& a, const Simplex& b) {
  require(a.dim() == b.dim(), ErrorCode::kDimension, "simplices differ in dimension");
}

double standard_error_of_mean(double sum, double sum_sq, std::size_t n) {
  const double nn = static_cast<double>(n);
  const double mean = sum / nn;
  const double var = std::max(sum_sq / nn - mean * mean, 0.0) * nn / std::max(nn - 1.0, 1.0);
  return std::sqrt(var / nn);
}

void check_eps_delta(double eps, double delta) {
  require(eps > 0.0 && eps < 1.0, ErrorCode::kParameter, "epsilon must lie in (0, 1)");
  require(delta > 0.0 && delta < 1.0, ErrorCode::kParameter, "delta must lie in (0, 1)");
}

std::uint64_t ceil_count(double v) {
  require(std::isfinite(v) && v < 9.2e18, ErrorCode::kParameter, "sample size overflows 64 bits");
  return static_cast<std::uint64_t>(std::ceil(v));
}

}  // namespace

std::string_view measure_mode_name(MeasureMode m) {
  switch (m) {
    case MeasureMode::kExact: return "exact";
    case MeasureMode::kMc: return "mc";
    case MeasureMode::kAuto: return "auto";
  }
  return "auto";
}

MeasureMode parse_measure_mode(std::string_view name) {
  if (name == "exact") return MeasureMode::kExact;
  if (name == "mc") return MeasureMode::kMc;
  if (name == "auto") return MeasureMode::kAuto;
  fail(ErrorCode::kParameter, "unknown measure mode '" + std::string(name) + "'");
}

MeasureMode resolve_mode(MeasureMode m, int dim) {
  if (m == MeasureMode::kAuto) return dim <= 2 ? MeasureMode::kExact : MeasureMode::kMc;
  return m;
}

std::string_view tv_method_name(TvMethod m) {
  switch (m) {
    case TvMethod::kExact: return "exact";
    case TvMethod::kMc: return "mc";
    case TvMethod::kNestedMc: return "nested-mc";
  }
  return "exact";
}

double intersection_volume_exact(const Simplex& a, const Simplex& b) {
  check_same_dim(a, b);
  if (a.dim() == 1) {
    const auto& va = a.vertices();
    const auto& vb = b.vertices();
    const double lo = std::max(std::min(va(0, 0), va(0, 1)), std::min(vb(0, 0), vb(0, 1)));
    const double hi = std::min(std::max(va(0, 0), va(0, 1)), std::max(vb(0, 0), vb(0, 1)));
    return std::max(hi - lo, 0.0);
  }
  require(a.dim() == 2, ErrorCode::kUnsupportedExact,
          "exact intersection volume is available for K <= 2 only, got K=" +
              std::to_string(a.dim()));
  std::vector<Vec2> poly = counter_clockwise(a);
  const std::vector<Vec2> clip = counter_clockwise(b);
  for (std::size_t i = 0; i < 3 && !poly.empty(); ++i)
    poly = clip_half_plane(poly, clip[i], clip[(i + 1) % 3]);
  if (poly.size() < 3) return 0.0;
  return std::min(shoelace(poly), std::min(a.volume(), b.volume()));
}

Estimate intersection_volume(const Simplex& a, const Simplex& b, MeasureMode mode,
                             std::size_t budget, RngStream& rng) {
  check_same_dim(a, b);
  if (resolve_mode(mode, a.dim()) == MeasureMode::kExact)
    return {intersection_volume_exact(a, b), 0.0};
  require(budget >= 1, ErrorCode::kParameter, "Monte Carlo budget must be positive");
  const Simplex& small = a.volume() <= b.volume() ? a : b;
  const Simplex& other = a.volume() <= b.volume() ? b : a;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < budget; ++i)
    if (other.contains(sample_uniform_simplex_point(small, rng), 0.0)) ++hits;
  const double p = static_cast<double>(hits) / static_cast<double>(budget);
  return {p * small.volume(),
          small.volume() * std::sqrt(p * (1.0 - p) / static_cast<double>(budget))};
}

double tv_uniform_exact(const Simplex& a, const Simplex& b) {
  const double inter = intersection_volume_exact(a, b);
  return std::clamp(1.0 - inter / std::max(a.volume(), b.volume()), 0.0, 1.0);
}

TvEstimate tv_uniform(const Simplex& a, const Simplex& b, MeasureMode mode, std::size_t budget,
                      RngStream& rng) {
  check_same_dim(a, b);
  const MeasureMode resolved = resolve_mode(mode, a.dim());
  const Estimate inter = intersection_volume(a, b, resolved, budget, rng);
  const double vmax = std::max(a.volume(), b.volume());
  TvEstimate tv;
  tv.value = std::clamp(1.0 - inter.value / vmax, 0.0, 1.0);
  tv.standard_error = inter.standard_error / vmax;
  tv.method = resolved == MeasureMode::kExact ? TvMethod::kExact : TvMethod::kMc;
  tv.outer_budget = resolved == MeasureMode::kExact ? 0 : budget;
  return tv;
}

TvEstimate tv_noisy_vs_clean_mc(const Simplex& s, double sigma, RngStream& rng,
                                std::size_t outer_budget, std::size_t inner_budget,
                                InnerEstimator inner) {
  require(sigma >= 0.0 && std::isfinite(sigma), ErrorCode::kParameter,
          "sigma must be nonnegative");
  TvEstimate tv;
  tv.method = TvMethod::kNestedMc;
  tv.outer_budget = outer_budget;
  tv.inner_budget = inner_budget;
  if (sigma == 0.0) {
    tv.method = TvMethod::kExact;
    return tv;
  }
  require(outer_budget >= 1000 && inner_budget >= 1000, ErrorCode::kParameter,
          "nested Monte Carlo budgets must be at least 1000");

  const int k = s.dim();
  const double kernel_norm = 1.0 / std::pow(std::sqrt(2.0 * std::numbers::pi) * sigma, k);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t o = 0; o < outer_budget; ++o) {
    const Point x = sample_uniform_simplex_point(s, rng);
    double kept = 0.0;
    if (inner == InnerEstimator::kGaussianHit) {
      std::size_t hits = 0;
      Point y(k);
      for (std::size_t i = 0; i < inner_budget; ++i) {
        for (int d = 0; d < k; ++d) y(d) = x(d) + sigma * rng.normal();
        if (s.contains(y, 0.0)) ++hits;
      }
      kept = static_cast<double>(hits) / static_cast<double>(inner_budget);
    } else {
      double acc = 0.0;
      for (std::size_t i = 0; i < inner_budget; ++i) {
        const Point y = sample_uniform_simplex_point(s, rng);
        acc += std::exp(-(x - y).squaredNorm() / (2.0 * sigma * sigma));
      }
      kept = s.volume() * kernel_norm * acc / static_cast<double>(inner_budget);
    }
    const double term = std::max(1.0 - kept, 0.0);
    sum += term;
    sum_sq += term * term;
  }
  tv.value = std::clamp(sum / static_cast<double>(outer_budget), 0.0, 1.0);
  tv.standard_error = standard_error_of_mean(sum, sum_sq, outer_budget);
  return tv;
}

double lemma3_bound(int dim, double theta_upper, double snr) {
  check_dimension(dim);
  require(theta_upper > 0.0, ErrorCode::kParameter, "theta_upper must be positive");
  const double k = dim;
  require(snr > k + 1.0 && std::isfinite(snr), ErrorCode::kOutOfRegime,
          "noise-gap bound needs SNR > K+1 (got SNR=" + std::to_string(snr) +
              ", K=" + std::to_string(dim) + ")");
  return 3.0 * (k + 1.0) * theta_upper / snr *
         std::sqrt(k + std::sqrt(8.0 * k * std::log(snr / (k + 1.0))));
}

double sample_complexity_thm2_exact(int dim, double theta_upper, double radius,
                                    double vol_root, double eps2, double delta) {
  check_dimension(dim);
  check_eps_delta(eps2, delta);
  require(theta_upper > 0.0 && radius > 0.0 && vol_root > 0.0, ErrorCode::kParameter,
          "theta_upper, R and vol_root must be positive");
  const double k = dim;
  const double grid = 1.0 + 10.0 * theta_upper * (k + 1.0) / eps2 * (radius / vol_root);
  return (2.0 * k * (k + 1.0) * std::log(grid) + std::log(3.0 / delta)) / (eps2 * eps2);
}

std::uint64_t sample_complexity_thm2(int dim, double theta_upper, double radius,
                                     double vol_root, double eps2, double delta) {
  return ceil_count(sample_complexity_thm2_exact(dim, theta_upper, radius, vol_root, eps2, delta));
}

double thm3_ball_term(int dim, double theta_lower, double delta) {
  check_dimension(dim);
  require(theta_lower > 0.0, ErrorCode::kParameter, "theta_lower must be positive");
  require(delta > 0.0 && delta < 1.0, ErrorCode::kParameter, "delta must lie in (0, 1)");
  const double k = dim;
  const double shape = (k + 1.0) * (k + 2.0) / k;
  const double t2 = theta_lower * theta_lower;
  return 144.0 * t2 * t2 * std::pow(kE, 4) * shape * shape * std::log(12.0 / delta);
}

double sample_complexity_thm3_exact(int dim, double theta_lower, double theta_upper,
                                    double radius, double vol_root, double eps2, double delta) {
  check_dimension(dim);
  check_eps_delta(eps2, delta);
  require(theta_lower > 0.0 && theta_upper > 0.0 && radius > 0.0 && vol_root > 0.0,
          ErrorCode::kParameter, "theta values, R and vol_root must be positive");
  const double k = dim;
  const double grid = 1.0 + 10.0 * theta_upper * (k + 1.0) / eps2 * (radius / vol_root);
  const double selection = (k * (k + 1.0) * std::log(grid) + std::log(6.0 / delta)) / (eps2 * eps2);
  return selection + thm3_ball_term(dim, theta_lower, delta);
}

std::uint64_t sample_complexity_thm3(int dim, double theta_lower, double theta_upper,
                                     double radius, double vol_root, double eps2, double delta) {
  return ceil_count(sample_complexity_thm3_exact(dim, theta_lower, theta_upper, radius, vol_root,
                                                 eps2, delta));
}

double radius_cap_ratio(int dim, double theta_lower, double snr) {
  check_dimension(dim);
  require(theta_lower > 0.0 && snr > 0.0, ErrorCode::kParameter,
          "theta_lower and snr must be positive");
  const double k = dim;
  const double denom = 1.0 + 4.0 * kE * kE * (k - 2.0) / (snr * snr) - 4.0 / (theta_lower * snr);
  require(denom > 0.0, ErrorCode::kSnrTooLow, "SNR too low for the radius cap");
  return 2.0 * kE * theta_lower * theta_lower * (k + 2.0) * std::sqrt((k + 1.0) * (k + 2.0)) *
         (1.0 + 1.0 / (theta_lower * snr)) / std::sqrt(denom);
}

}  // namespace simplexlearn
