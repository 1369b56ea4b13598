#pragma once

#include "simplexlearn/rng.hpp"
#include "simplexlearn/simplex.hpp"
#include "simplexlearn/types.hpp"

#include <cstdint>
#include <optional>
#include <utility>

namespace simplexlearn {

// Points y_i = V phi_i + z_i with z_i ~ N(0, sigma^2 I).
struct NoisyDataset {
  int dim = 1;
  double sigma = 0.0;
  PointSet points;
  std::uint64_t seed = 0;
  std::optional<Simplex> truth;

  std::size_t size() const { return points.size(); }
  void validate() const;
};

// Uniform draw from the ball: Gaussian direction, radius ~ U^(1/K).
Point sample_uniform_ball(const Point& center, double radius, RngStream& rng);

// i.i.d. uniform points in `s`: phi from normalized Exp(1) draws, x = V phi.
PointSet sample_uniform_simplex(const Simplex& s, std::size_t n, RngStream& rng);
Point sample_uniform_simplex_point(const Simplex& s, RngStream& rng);

// Adds i.i.d. N(0, sigma^2 I) noise. sigma == 0 returns the input unchanged
// and draws nothing.
PointSet add_gaussian_noise(const PointSet& points, double sigma, RngStream& rng);

// Convenience: noiseless draw plus noise, each from its own substream.
NoisyDataset generate_dataset(const Simplex& truth, std::size_t n, double sigma,
                              std::uint64_t seed);

// First ceil(n/2) points, then the rest. Order preserving.
std::pair<NoisyDataset, NoisyDataset> split_half(const NoisyDataset& d);

}  // namespace simplexlearn
