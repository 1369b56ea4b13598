#include "doctest.h"
#include "fixtures.hpp"

#include "simplexlearn/error.hpp"
#include "simplexlearn/metrics.hpp"
#include "simplexlearn/bounding.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>

using namespace simplexlearn;
using fixtures::interval;
using fixtures::pt;
using fixtures::simplex;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

double quad(auto f, double a, double b) {
  if (b <= a) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-13);
}

// Integral of |1/|A| 1_A - 1/|B| 1_B| / 2 split at every endpoint.
double tv_intervals_by_quadrature(double a0, double a1, double b0, double b1) {
  std::vector<double> cuts = {a0, a1, b0, b1};
  std::sort(cuts.begin(), cuts.end());
  auto f = [&](double x) {
    const double fa = (x >= a0 && x <= a1) ? 1.0 / (a1 - a0) : 0.0;
    const double fb = (x >= b0 && x <= b1) ? 1.0 / (b1 - b0) : 0.0;
    return 0.5 * std::abs(fa - fb);
  };
  double total = 0.0;
  for (int i = 0; i + 1 < 4; ++i) total += quad(f, cuts[i], cuts[i + 1]);
  return total;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInternal;
}

}  // namespace

TEST_CASE("exact intersection volumes") {
  CHECK(intersection_volume_exact(interval(0, 1), interval(0.5, 2)) == doctest::Approx(0.5));
  CHECK(intersection_volume_exact(interval(0, 1), interval(3, 4)) == 0.0);
  const Simplex t = simplex({{0.3, 0.1}, {2, 0.4}, {1, 1.7}});
  CHECK(intersection_volume_exact(t, t) == doctest::Approx(t.volume()));
  const Simplex a = simplex({{0, 0}, {1, 0}, {0, 1}});
  const Simplex b = simplex({{0, 0}, {1, 0}, {1, 1}});
  CHECK(intersection_volume_exact(a, b) == doctest::Approx(0.25));
  CHECK(code_of([] { intersection_volume_exact(standard_simplex(3), standard_simplex(3)); }) ==
        ErrorCode::kUnsupportedExact);
}

TEST_CASE("Monte Carlo intersection agrees with clipping") {
  RngStream rng(4, stream_key(StreamKind::kFixture, 40));
  const Simplex a = simplex({{0, 0}, {1, 0}, {0, 1}});
  const Simplex b = simplex({{0, 0}, {1, 0}, {1, 1}});
  const Estimate e = intersection_volume(a, b, MeasureMode::kMc, 40000, rng);
  CHECK(std::abs(e.value - 0.25) < 4 * e.standard_error);

  const Simplex c = standard_simplex(3);
  const Simplex d = c.translated(pt({0.1, 0.1, 0.1}));
  const Estimate cd = intersection_volume(c, d, MeasureMode::kMc, 40000, rng);
  // Overlap of the standard tetrahedron with its shift is the tetrahedron
  // x_i >= 0.1, sum x <= 1, of edge 0.7.
  CHECK(std::abs(cd.value - std::pow(0.7, 3) / 6) < 4 * cd.standard_error);
}

TEST_CASE("uniform TV closed form") {
  CHECK(tv_uniform_exact(interval(0, 1), interval(0, 1)) == 0.0);
  CHECK(tv_uniform_exact(interval(0, 1), interval(2, 3)) == 1.0);
  CHECK(tv_uniform_exact(interval(0, 1), interval(0, 2)) == doctest::Approx(0.5));
  CHECK(tv_uniform_exact(interval(0, 1), interval(0, 2)) ==
        doctest::Approx(tv_intervals_by_quadrature(0, 1, 0, 2)).epsilon(1e-10));

  RngStream rng(5, stream_key(StreamKind::kFixture, 41));
  auto rand_interval = [&] {
    const double a = 4 * rng.uniform() - 2, b = 4 * rng.uniform() - 2;
    return std::pair{std::min(a, b), std::max(a, b) + 1e-3};
  };
  for (int t = 0; t < 100; ++t) {
    const auto [a0, a1] = rand_interval();
    const auto [b0, b1] = rand_interval();
    const auto [c0, c1] = rand_interval();
    const Simplex a = interval(a0, a1), b = interval(b0, b1), c = interval(c0, c1);
    const double ab = tv_uniform_exact(a, b);
    CHECK(std::abs(ab - tv_intervals_by_quadrature(a0, a1, b0, b1)) < 1e-6);
    CHECK(ab == tv_uniform_exact(b, a));
    CHECK(ab <= tv_uniform_exact(a, c) + tv_uniform_exact(c, b) + 1e-9);
  }
}

TEST_CASE("uniform TV on triangles against a grid") {
  RngStream rng(6, stream_key(StreamKind::kFixture, 42));
  for (int t = 0; t < 5; ++t) {
    const Simplex a = random_simplex(2, {100, 100}, 1.0, rng);
    const Simplex b = random_simplex(2, {100, 100}, 1.0, rng);
    const int g = 600;
    const double h = 2.0 / g;
    double sum = 0.0;
    Point x(2);
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j) {
        x << -1 + (i + 0.5) * h, -1 + (j + 0.5) * h;
        sum += std::abs(a.density_at(x) - b.density_at(x));
      }
    CHECK(std::abs(tv_uniform_exact(a, b) - 0.5 * sum * h * h) < 2e-2);

    const TvEstimate mc = tv_uniform(a, b, MeasureMode::kMc, 40000, rng);
    CHECK(mc.method == TvMethod::kMc);
    CHECK(std::abs(mc.value - tv_uniform_exact(a, b)) < 4 * mc.standard_error + 1e-12);
  }
}

TEST_CASE("nested Monte Carlo TV between noisy and clean laws") {
  RngStream rng(7, stream_key(StreamKind::kFixture, 43));
  const Simplex s = interval(0, 1);
  CHECK(tv_noisy_vs_clean_mc(s, 1e-8, rng).value <= 0.01);
  CHECK(tv_noisy_vs_clean_mc(s, 0.0, rng).value == 0.0);

  const TvEstimate mid = tv_noisy_vs_clean_mc(s, 0.05, rng);
  CHECK(mid.value > 0.0);
  CHECK(mid.value < 1.0);
  CHECK(mid.value <= lemma3_bound(1, 1.0, 20.0));

  // 1-D oracle: integral over [0,1] of P(x + z outside [0,1]).
  const boost::math::normal_distribution<double> n01;
  auto oracle = [&](double sigma) {
    return quad(
        [&](double x) {
          return 1.0 - (boost::math::cdf(n01, (1 - x) / sigma) - boost::math::cdf(n01, -x / sigma));
        },
        0.0, 1.0);
  };
  CHECK(std::abs(mid.value - oracle(0.05)) < 3 * mid.standard_error);

  double previous = 0.0, previous_se = 0.0;
  for (double sigma : {0.01, 0.05, 0.2}) {
    const TvEstimate e = tv_noisy_vs_clean_mc(s, sigma, rng, 2000, 2000);
    CHECK(e.value + 3 * std::hypot(e.standard_error, previous_se) >= previous);
    previous = e.value;
    previous_se = e.standard_error;
  }

  const TvEstimate kernel =
      tv_noisy_vs_clean_mc(s, 0.05, rng, 2000, 2000, InnerEstimator::kKernel);
  CHECK(kernel.value >= 0.0);
  CHECK(code_of([&] { tv_noisy_vs_clean_mc(s, 0.1, rng, 10, 10); }) == ErrorCode::kParameter);
}

TEST_CASE("noise gap bound") {
  CHECK(lemma3_bound(1, 2.0, 100.0) ==
        doctest::Approx(0.12 * std::sqrt(1 + std::sqrt(8 * std::log(50.0)))));
  CHECK(lemma3_bound(1, 2.0, 100.0) == doctest::Approx(0.3082).epsilon(1e-3));
  CHECK(lemma3_bound(1, 2.0, 1e8) < 1e-6);
  CHECK(code_of([] { lemma3_bound(1, 2.0, 2.0); }) == ErrorCode::kOutOfRegime);
}

TEST_CASE("sample complexity calculators") {
  using boost::multiprecision::log;
  const Big thm2_oracle = (4 * log(Big(161)) + log(Big(30))) / Big("0.25");
  CHECK(sample_complexity_thm2_exact(1, 2.0, 2.0, 1.0, 0.5, 0.1) ==
        doctest::Approx(thm2_oracle.convert_to<double>()).epsilon(1e-14));
  CHECK(sample_complexity_thm2(1, 2.0, 2.0, 1.0, 0.5, 0.1) == 95);
  CHECK(sample_complexity_thm2(2, 2.0, 3.0, 1.0, 0.3, 0.1) >
        sample_complexity_thm2(2, 2.0, 2.0, 1.0, 0.3, 0.1));
  CHECK(sample_complexity_thm2_exact(2, 2.0, 2.0, 1.0, 0.15, 0.1) >
        4 * sample_complexity_thm2_exact(2, 2.0, 2.0, 1.0, 0.3, 0.1));

  CHECK(thm3_ball_term(1, 1.0, 0.5) == doctest::Approx(2 * min_samples_lemma1_exact(1, 1.0, 0.5)));
  const double n3 = sample_complexity_thm3_exact(1, 1.0, 2.0, 2.0, 1.0, 0.5, 0.5);
  CHECK(n3 >= thm3_ball_term(1, 1.0, 0.5));
  CHECK(sample_complexity_thm3(1, 1.0, 2.0, 2.0, 1.0, 0.5, 0.1) >
        sample_complexity_thm3(1, 1.0, 2.0, 2.0, 1.0, 0.5, 0.2));

  GuaranteeRecord g;
  g.eps1 = 0.01;
  g.eps2 = 0.1;
  CHECK(g.bound() == doctest::Approx(0.74));
  CHECK(radius_cap_ratio(1, 1.0, 100.0) < radius_cap_ratio(1, 1.0, 10.0));
}
