#include "doctest.h"
#include "fixtures.hpp"

#include "simplexlearn/error.hpp"
#include "simplexlearn/sampling.hpp"

#include <cmath>

using namespace simplexlearn;
using fixtures::pt;

TEST_CASE("rng streams are deterministic and separated") {
  RngStream a(42, stream_key(StreamKind::kSample));
  RngStream b(42, stream_key(StreamKind::kSample));
  RngStream c(42, stream_key(StreamKind::kNoise));
  bool differs = false;
  for (int i = 0; i < 16; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    differs |= x != c.next_u64();
  }
  CHECK(differs);
  CHECK(stream_key(StreamKind::kContest, 1, 2) != stream_key(StreamKind::kContest, 2, 1));

  RngStream d(42, 9);
  const RngStream child_before = d.substream(3);
  d.next_u64();
  RngStream x = child_before;
  RngStream y = d.substream(3);
  CHECK(x.next_u64() == y.next_u64());
}

TEST_CASE("uniform simplex sampling") {
  RngStream rng(1, stream_key(StreamKind::kFixture, 10));
  const Simplex s = fixtures::simplex({{0, 0}, {3, 0}, {1, 2}});
  CHECK(sample_uniform_simplex(s, 0, rng).empty());
  const std::size_t n = 10000;
  const PointSet xs = sample_uniform_simplex(s, n, rng);
  REQUIRE(xs.size() == n);
  Point mean = Point::Zero(2);
  for (const auto& x : xs) {
    CHECK(s.contains(x));
    mean += x;
  }
  mean /= static_cast<double>(n);
  const Point centroid = s.vertices().rowwise().mean();
  for (int d = 0; d < 2; ++d)
    CHECK(std::abs(mean(d) - centroid(d)) < 4 * s.diameter() / std::sqrt(double(n)));
}

TEST_CASE("uniform simplex sampling hits sub-regions in proportion") {
  // The medians split the standard triangle into 6 pieces of equal area.
  RngStream rng(2, stream_key(StreamKind::kFixture, 11));
  const Simplex s = standard_simplex(2);
  const int n = 60000;
  int counts[3] = {0, 0, 0};
  for (int i = 0; i < n; ++i) {
    const Weights phi = s.barycentric(sample_uniform_simplex_point(s, rng));
    int arg = 0;
    for (int j = 1; j < 3; ++j)
      if (phi(j) > phi(arg)) arg = j;
    ++counts[arg];
  }
  for (int c : counts) CHECK(std::abs(c / double(n) - 1.0 / 3) < 4 * std::sqrt(2.0 / 9 / n));
}

TEST_CASE("gaussian noise") {
  RngStream rng(3, stream_key(StreamKind::kFixture, 12));
  PointSet zeros(100000, Point::Zero(2));
  const PointSet same = add_gaussian_noise(zeros, 0.0, rng);
  REQUIRE(same.size() == zeros.size());
  CHECK(same[17] == zeros[17]);

  const double sigma = 0.3;
  const PointSet y = add_gaussian_noise(zeros, sigma, rng);
  for (int d = 0; d < 2; ++d) {
    double m = 0.0, v = 0.0;
    for (const auto& p : y) m += p(d);
    m /= double(y.size());
    for (const auto& p : y) v += (p(d) - m) * (p(d) - m);
    v /= double(y.size() - 1);
    CHECK(std::abs(m) < 4 * sigma / std::sqrt(double(y.size())));
    CHECK(std::abs(v / (sigma * sigma) - 1.0) < 0.05);
  }
}

TEST_CASE("ball sampling stays inside") {
  RngStream rng(4, stream_key(StreamKind::kFixture, 13));
  const Point c = pt({1, -2, 0.5});
  Point mean = Point::Zero(3);
  const int n = 20000;
  int inner = 0;
  for (int i = 0; i < n; ++i) {
    const Point x = sample_uniform_ball(c, 2.0, rng);
    CHECK((x - c).norm() <= 2.0);
    inner += (x - c).norm() <= 1.0;
    mean += x;
  }
  mean /= double(n);
  CHECK((mean - c).cwiseAbs().maxCoeff() < 4 * 2.0 / std::sqrt(double(n)));
  // Half the radius holds 1/8 of the volume in 3-D.
  CHECK(std::abs(inner / double(n) - 0.125) < 4 * std::sqrt(0.125 * 0.875 / n));
}

TEST_CASE("dataset generation and splitting") {
  const Simplex s = standard_simplex(2);
  const NoisyDataset a = generate_dataset(s, 101, 0.1, 7);
  const NoisyDataset b = generate_dataset(s, 101, 0.1, 7);
  CHECK(a.points == b.points);
  CHECK(a.size() == 101);
  CHECK(a.truth.has_value());

  auto sizes = [&](std::size_t n) {
    const auto [x, y] = split_half(generate_dataset(s, n, 0.0, 1));
    return std::pair{x.size(), y.size()};
  };
  CHECK(sizes(4) == std::pair<std::size_t, std::size_t>{2, 2});
  CHECK(sizes(5) == std::pair<std::size_t, std::size_t>{3, 2});

  const auto [first, second] = split_half(a);
  PointSet joined = first.points;
  joined.insert(joined.end(), second.points.begin(), second.points.end());
  CHECK(joined == a.points);
  CHECK(first.sigma == a.sigma);

  try {
    split_half(generate_dataset(s, 1, 0.0, 1));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInsufficientData);
  }
}
