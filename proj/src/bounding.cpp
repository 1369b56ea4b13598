#include "simplexlearn/bounding.hpp"

#include "simplexlearn/error.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace simplexlearn {
namespace {

constexpr double kE = std::numbers::e;

// Fixed-shape pairwise reduction: the result depends only on the inputs, not
// on how the caller might split the work.
template <class Term>
double pairwise_sum(std::size_t begin, std::size_t end, const Term& term) {
  if (end - begin <= 32) {
    double s = 0.0;
    for (std::size_t i = begin; i < end; ++i) s += term(i);
    return s;
  }
  const std::size_t mid = begin + (end - begin) / 2;
  return pairwise_sum(begin, mid, term) + pairwise_sum(mid, end, term);
}

void check_delta(double delta) {
  require(delta > 0.0 && delta < 1.0, ErrorCode::kParameter,
          "delta must lie in (0, 1)");
}

}  // namespace

std::string_view provenance_name(Provenance p) {
  switch (p) {
    case Provenance::kOracle: return "oracle";
    case Provenance::kPlugIn: return "plug-in";
    case Provenance::kConfig: return "config";
  }
  return "config";
}

Provenance parse_provenance(std::string_view name) {
  if (name == "oracle") return Provenance::kOracle;
  if (name == "plug-in" || name == "plugin") return Provenance::kPlugIn;
  if (name == "config") return Provenance::kConfig;
  fail(ErrorCode::kParameter, "unknown SNR mode '" + std::string(name) + "'");
}

NoiseModel NoiseModel::oracle(const Simplex& truth, double sigma) {
  NoiseModel m = from_vol_root(std::pow(truth.volume(), 1.0 / truth.dim()), sigma);
  m.provenance = Provenance::kOracle;
  return m;
}

NoiseModel NoiseModel::from_snr(double snr, double sigma) {
  require(snr > 0.0 && std::isfinite(snr), ErrorCode::kParameter, "snr must be positive");
  require(sigma >= 0.0, ErrorCode::kParameter, "sigma must be nonnegative");
  require(sigma > 0.0, ErrorCode::kParameter,
          "an SNR alone fixes the simplex scale only when sigma > 0; supply vol_root");
  NoiseModel m;
  m.sigma = sigma;
  m.snr = snr;
  m.vol_root = snr * sigma;
  m.provenance = Provenance::kConfig;
  return m;
}

NoiseModel NoiseModel::from_vol_root(double vol_root, double sigma) {
  require(vol_root > 0.0 && std::isfinite(vol_root), ErrorCode::kParameter,
          "vol_root must be positive");
  require(sigma >= 0.0 && std::isfinite(sigma), ErrorCode::kParameter,
          "sigma must be nonnegative");
  NoiseModel m;
  m.sigma = sigma;
  m.vol_root = vol_root;
  m.snr = sigma > 0.0 ? std::min(vol_root / sigma, kNoiselessSnr) : kNoiselessSnr;
  m.provenance = Provenance::kConfig;
  return m;
}

NoiseModel NoiseModel::plug_in(double d_statistic, int dim, double sigma, double floor) {
  check_dimension(dim);
  require(floor > 0.0, ErrorCode::kParameter, "plug-in floor must be positive");
  const double k = dim;
  const double signal = std::max(d_statistic - k * sigma * sigma, 0.0);
  const double vol_root =
      std::max(std::sqrt(4.0 * kE * kE * (k + 1.0) * (k + 2.0) * signal) / k, floor);
  NoiseModel m = from_vol_root(vol_root, sigma);
  m.provenance = Provenance::kPlugIn;
  return m;
}

void NoiseModel::validate() const {
  require(sigma >= 0.0 && std::isfinite(sigma), ErrorCode::kParameter,
          "sigma must be nonnegative");
  require(snr > 0.0 && std::isfinite(snr), ErrorCode::kParameter, "snr must be positive");
  require(vol_root > 0.0 && std::isfinite(vol_root), ErrorCode::kParameter,
          "vol_root must be positive");
}

bool BoundingBall::contains(const Point& x, double tol) const {
  return (x - center).norm() <= radius * (1.0 + tol);
}

double pair_statistic_D(const PointSet& points) {
  require(points.size() >= 2 && points.size() % 2 == 0, ErrorCode::kPairing,
          "pair statistic needs an even number (>= 2) of points, got " +
              std::to_string(points.size()));
  const std::size_t m = points.size() / 2;
  const double total = pairwise_sum(0, m, [&](std::size_t i) {
    return (points[2 * i + 1] - points[2 * i]).squaredNorm();
  });
  return total / (2.0 * static_cast<double>(m));
}

Point centroid_p(const PointSet& points) {
  require(!points.empty(), ErrorCode::kInsufficientData, "centroid of an empty point set");
  const auto k = points.front().size();
  Point c(k);
  for (Eigen::Index d = 0; d < k; ++d)
    c(d) = pairwise_sum(0, points.size(), [&](std::size_t i) { return points[i](d); });
  return c / static_cast<double>(points.size());
}

double min_samples_lemma1_exact(int dim, double theta_lower, double delta) {
  check_dimension(dim);
  require(theta_lower > 0.0, ErrorCode::kParameter, "theta_lower must be positive");
  check_delta(delta);
  const double k = dim;
  const double shape = (k + 1.0) * (k + 2.0) / k;
  const double t2 = theta_lower * theta_lower;
  const double e2 = kE * kE;
  return 72.0 * t2 * t2 * e2 * e2 * shape * shape * std::log(12.0 / delta);
}

std::uint64_t min_samples_lemma1(int dim, double theta_lower, double delta) {
  const double v = std::ceil(min_samples_lemma1_exact(dim, theta_lower, delta));
  require(v < 9.2e18, ErrorCode::kParameter, "sample threshold overflows 64 bits");
  return static_cast<std::uint64_t>(v);
}

double radius_denominator(int dim, double theta_lower, double snr) {
  const double k = dim;
  return 1.0 + 4.0 * kE * kE * (k - 2.0) / (snr * snr) - 4.0 / (theta_lower * snr);
}

double critical_snr(int dim, double theta_lower) {
  // In u = 1/SNR the denominator is a u^2 - b u + 1.
  const double a = 4.0 * kE * kE * (dim - 2.0);
  const double b = 4.0 / theta_lower;
  if (a == 0.0) return b;
  const double disc = b * b - 4.0 * a;
  if (disc < 0.0) return 0.0;
  const double u0 = (b - std::sqrt(disc)) / (2.0 * a);
  return u0 > 0.0 ? 1.0 / u0 : 0.0;
}

double bounding_radius(double d_statistic, int dim, const IsoperimetryParams& params,
                       const NoiseModel& noise) {
  check_dimension(dim);
  params.validate();
  noise.validate();
  require(d_statistic >= 0.0, ErrorCode::kParameter, "D must be nonnegative");
  const double k = dim;
  const double tl = params.theta_lower;
  const double denom = radius_denominator(dim, tl, noise.snr);
  if (!(denom > 0.0)) {
    std::ostringstream msg;
    msg << "SNR " << noise.snr << " is too low for K=" << dim << ", theta_lower=" << tl
        << " (radius denominator " << denom << " <= 0); critical SNR is "
        << critical_snr(dim, tl);
    fail(ErrorCode::kSnrTooLow, msg.str());
  }
  const double core =
      std::sqrt(4.0 * kE * kE * (k + 1.0) * (k + 2.0) * tl * tl * d_statistic / denom);
  const double shift =
      1.0 + params.theta_upper / (tl * tl * kE * kE * noise.snr * std::sqrt(k));
  return core * shift;
}

BoundingBall bounding_ball(const NoisyDataset& first_half, const IsoperimetryParams& params,
                           const std::optional<NoiseModel>& noise,
                           const BoundingOptions& options) {
  first_half.validate();
  params.validate();
  check_delta(options.delta);
  require(first_half.size() >= 2, ErrorCode::kInsufficientData,
          "bounding ball needs at least 2 points, got " + std::to_string(first_half.size()));

  // Both statistics use the same 2m points; an odd trailing point is dropped.
  const std::size_t pairs = first_half.size() / 2;
  const PointSet used(first_half.points.begin(),
                      first_half.points.begin() + static_cast<std::ptrdiff_t>(2 * pairs));

  BoundingBall ball;
  auto& diag = ball.diagnostics;
  diag.pairs = pairs;
  diag.delta_used = options.delta;
  diag.required_pairs = min_samples_lemma1(first_half.dim, params.theta_lower, options.delta);
  if (pairs < diag.required_pairs) {
    require(!options.strict, ErrorCode::kInsufficientData,
            "strict mode needs " + std::to_string(diag.required_pairs) + " pairs (" +
                std::to_string(2 * diag.required_pairs) + " points) in the first half, got " +
                std::to_string(pairs));
    diag.heuristic = true;
    diag.warnings.push_back("pair count " + std::to_string(pairs) +
                            " is below the sample threshold " +
                            std::to_string(diag.required_pairs) + "; ball is heuristic");
  }
  if (used.size() < first_half.size()) diag.warnings.push_back("odd trailing point ignored");

  diag.d_statistic = pair_statistic_D(used);
  require(diag.d_statistic > 0.0, ErrorCode::kDegenerateData,
          "pair statistic D is zero (identical points); radius would be 0");

  const double floor =
      options.plug_in_floor > 0.0 ? options.plug_in_floor
                                  : std::max(1e-3 * first_half.sigma, 1e-300);
  const NoiseModel model =
      noise ? *noise
            : NoiseModel::plug_in(diag.d_statistic, first_half.dim, first_half.sigma, floor);
  diag.snr_used = model.snr;
  diag.vol_root_used = model.vol_root;
  diag.snr_provenance = model.provenance;
  diag.denominator = radius_denominator(first_half.dim, params.theta_lower, model.snr);

  ball.center = centroid_p(used);
  ball.radius = bounding_radius(diag.d_statistic, first_half.dim, params, model);
  require(ball.radius > 0.0 && std::isfinite(ball.radius), ErrorCode::kDegenerateData,
          "bounding radius is not positive");
  return ball;
}

}  // namespace simplexlearn
