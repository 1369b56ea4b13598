#include "simplexlearn/sampling.hpp"

#include "simplexlearn/error.hpp"

#include <cmath>

namespace simplexlearn {

void NoisyDataset::validate() const {
  check_dimension(dim);
  require(sigma >= 0.0 && std::isfinite(sigma), ErrorCode::kParameter,
          "sigma must be nonnegative and finite");
  for (const auto& p : points)
    require(p.size() == dim, ErrorCode::kDimension, "dataset point has wrong dimension");
  if (truth) require(truth->dim() == dim, ErrorCode::kDimension, "truth dimension mismatch");
}

Point sample_uniform_ball(const Point& center, double radius, RngStream& rng) {
  const auto k = center.size();
  Point dir(k);
  double norm = 0.0;
  do {
    for (Eigen::Index i = 0; i < k; ++i) dir(i) = rng.normal();
    norm = dir.norm();
  } while (norm == 0.0);
  const double r = radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(k));
  return center + dir * (r / norm);
}

Point sample_uniform_simplex_point(const Simplex& s, RngStream& rng) {
  const int k = s.dim();
  Weights phi(k + 1);
  double total = 0.0;
  for (int i = 0; i <= k; ++i) {
    phi(i) = rng.exponential();
    total += phi(i);
  }
  phi /= total;
  return s.vertices() * phi;
}

PointSet sample_uniform_simplex(const Simplex& s, std::size_t n, RngStream& rng) {
  PointSet out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sample_uniform_simplex_point(s, rng));
  return out;
}

PointSet add_gaussian_noise(const PointSet& points, double sigma, RngStream& rng) {
  require(sigma >= 0.0 && std::isfinite(sigma), ErrorCode::kParameter,
          "sigma must be nonnegative and finite");
  PointSet out = points;
  if (sigma == 0.0) return out;
  for (auto& p : out)
    for (Eigen::Index i = 0; i < p.size(); ++i) p(i) += sigma * rng.normal();
  return out;
}

NoisyDataset generate_dataset(const Simplex& truth, std::size_t n, double sigma,
                              std::uint64_t seed) {
  RngStream sample_rng(seed, stream_key(StreamKind::kSample));
  RngStream noise_rng(seed, stream_key(StreamKind::kNoise));
  NoisyDataset d;
  d.dim = truth.dim();
  d.sigma = sigma;
  d.seed = seed;
  d.points = add_gaussian_noise(sample_uniform_simplex(truth, n, sample_rng), sigma, noise_rng);
  d.truth = truth;
  return d;
}

std::pair<NoisyDataset, NoisyDataset> split_half(const NoisyDataset& d) {
  require(d.size() >= 2, ErrorCode::kInsufficientData,
          "need at least 2 points to split the data in half, got " + std::to_string(d.size()));
  const std::size_t first = (d.size() + 1) / 2;
  NoisyDataset a = d;
  NoisyDataset b = d;
  a.points.assign(d.points.begin(), d.points.begin() + static_cast<std::ptrdiff_t>(first));
  b.points.assign(d.points.begin() + static_cast<std::ptrdiff_t>(first), d.points.end());
  return {std::move(a), std::move(b)};
}

}  // namespace simplexlearn
