#include "doctest.h"
#include "fixtures.hpp"

#include "simplexlearn/error.hpp"
#include "simplexlearn/metrics.hpp"
#include "simplexlearn/quantize.hpp"

#include <algorithm>
#include <cmath>

using namespace simplexlearn;
using fixtures::pt;

namespace {

BoundingBall ball_at(Point center, double radius) {
  BoundingBall b;
  b.center = std::move(center);
  b.radius = radius;
  return b;
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

TEST_CASE("covering size bound") {
  CHECK(covering_size_bound(1.0, 1.0, 1) == 25);
  CHECK(covering_size_bound(1.0, 2.0, 1) == 9);
  CHECK(covering_size_bound(2.0, 1.0, 1) > covering_size_bound(1.0, 1.0, 1));
  CHECK(covering_size_bound(1.0, 0.5, 2) > covering_size_bound(1.0, 1.0, 2));
  CHECK(code_of([] { covering_size_bound(10.0, 0.01, 3); }) == ErrorCode::kFamilyTooLarge);
}

TEST_CASE("quantization parameters") {
  const auto q = QuantizationParams::make(2, 0.3, 1.5, 2.0, Provenance::kOracle);
  CHECK(q.alpha == doctest::Approx(1.5 / 10));
  CHECK(q.eps_cov == doctest::Approx(0.15 * 0.3 / 3));
  CHECK(q.vol_root_provenance == Provenance::kOracle);
}

TEST_CASE("random covering") {
  RngStream rng(1, stream_key(StreamKind::kFixture, 30));
  const BoundingBall ball = ball_at(pt({2, -1}), 1.5);
  const CoveringSet cov = random_covering(ball, 1.0, rng);
  REQUIRE(cov.points.size() == covering_size_bound(1.5, 1.0, 2));
  Point mean = Point::Zero(2);
  for (const auto& p : cov.points) {
    CHECK((p - ball.center).norm() <= ball.radius);
    mean += p;
  }
  mean /= double(cov.points.size());
  CHECK((mean - ball.center).cwiseAbs().maxCoeff() <
        4 * ball.radius / std::sqrt(double(cov.points.size())));

  int passed = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    RngStream r(t, stream_key(StreamKind::kFixture, 31));
    const CoveringSet c = random_covering(ball_at(pt({0}), 1.0), 0.2, r);
    passed += verify_cover(c, 2000, r).passed;
  }
  CHECK(passed >= 95);
}

TEST_CASE("grid covering") {
  const CoveringSet line = grid_covering(ball_at(pt({0}), 1.0), 0.5);
  std::vector<double> xs;
  for (const auto& p : line.points) xs.push_back(p(0));
  std::sort(xs.begin(), xs.end());
  CHECK(xs == std::vector<double>{-1.0, 0.0, 1.0});

  RngStream rng(2, stream_key(StreamKind::kFixture, 32));
  for (int k = 1; k <= 3; ++k) {
    const BoundingBall ball = ball_at(Point::Constant(k, 0.3), 1.0);
    const CoveringSet cov = grid_covering(ball, 0.35);
    for (const auto& p : cov.points) CHECK(ball.contains(p, 1e-12));
    const CoverReport r = verify_cover(cov, 5000, rng);
    CHECK(r.passed);
    CHECK(r.max_distance <= 0.35);
  }
  const CoveringSet a = grid_covering(ball_at(pt({0.1, 0.2}), 2.0), 0.3);
  const CoveringSet b = grid_covering(ball_at(pt({0.1, 0.2}), 2.0), 0.3);
  CHECK(a.points == b.points);
}

TEST_CASE("cover verification detects gaps") {
  RngStream rng(3, stream_key(StreamKind::kFixture, 33));
  const BoundingBall ball = ball_at(pt({1, 1}), 2.0);
  CHECK(verify_cover(CoveringSet{ball, 2.0, {ball.center}, CoverMethod::kRandom}, 1000, rng)
            .passed);
  const CoverReport r =
      verify_cover(CoveringSet{ball, 1.0, {ball.center}, CoverMethod::kRandom}, 1000, rng);
  CHECK_FALSE(r.passed);
  CHECK(r.max_distance > 1.0);
}

TEST_CASE("candidate enumeration") {
  const BoundingBall ball = ball_at(pt({0}), 3.0);
  CoveringSet cov{ball, 0.1, {pt({-2}), pt({-1}), pt({0}), pt({1}), pt({2})}, CoverMethod::kGrid};
  const CandidateFamily fam = enumerate_candidates(cov, 1);
  CHECK(fam.size() == 10);
  CHECK(fam.filters().subsets == 10);
  const auto t0 = fam.tuple(0);
  CHECK(t0[0] == 0);
  CHECK(t0[1] == 1);
  const auto last = fam.tuple(9);
  CHECK(last[0] == 3);
  CHECK(last[1] == 4);

  cov.points.push_back(pt({1}));
  const CandidateFamily dup = enumerate_candidates(cov, 1);
  CHECK(dup.size() == 14);
  CHECK(dup.filters().dropped_degenerate == 1);

  CandidateFilters tiny;
  tiny.candidate_cap = 5;
  CHECK(code_of([&] { enumerate_candidates(cov, 1, tiny); }) == ErrorCode::kTooManyCandidates);

  CoveringSet collinear{ball_at(pt({0, 0}), 3.0), 0.1, {pt({0, 0}), pt({1, 1}), pt({2, 2})},
                        CoverMethod::kGrid};
  CHECK(code_of([&] { enumerate_candidates(collinear, 2); }) == ErrorCode::kEmptyFamily);
}

TEST_CASE("enumeration is thread independent and matches family_member") {
  const CoveringSet cov = grid_covering(ball_at(pt({0, 0}), 1.0), 0.3);
  CandidateFilters f;
  f.isoperimetry = IsoperimetryParams{1.0, 2.0};
  const CandidateFamily one = enumerate_candidates(cov, 2, f, 1);
  const CandidateFamily four = enumerate_candidates(cov, 2, f, 4);
  REQUIRE(one.size() == four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    const auto a = one.tuple(i);
    const auto b = four.tuple(i);
    CHECK(std::equal(a.begin(), a.end(), b.begin(), b.end()));
  }
  CHECK(one.filters().dropped_isoperimetry > 0);
  CHECK(one.size() + one.filters().dropped_isoperimetry + one.filters().dropped_degenerate ==
        one.filters().subsets);

  std::size_t next = 0;
  const auto n = static_cast<std::uint32_t>(cov.points.size());
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = a + 1; b < n; ++b)
      for (std::uint32_t c = b + 1; c < n; ++c) {
        const std::uint32_t t[3] = {a, b, c};
        const auto member = family_member(cov, t, f);
        if (!member) continue;
        REQUIRE(next < one.size());
        const auto ft = one.tuple(next++);
        CHECK(std::equal(ft.begin(), ft.end(), t));
      }
  CHECK(next == one.size());
}

TEST_CASE("family is representative at K = 1") {
  const Simplex truth = fixtures::interval(0.2, 1.1);
  const double eps = 0.3;
  const auto q = QuantizationParams::make(1, eps, truth.volume(), 1.0);
  const BoundingBall ball = ball_at(pt({0.6}), 1.2);
  const CoveringSet cov = grid_covering(ball, q.eps_cov);
  const CandidateFamily fam = enumerate_candidates(cov, 1);
  double best = 1.0;
  for (std::size_t i = 0; i < fam.size(); ++i)
    best = std::min(best, tv_uniform_exact(fam.simplex(i), truth));
  CHECK(best <= eps);

  const auto snapped = snap_to_cover(cov, truth);
  std::vector<std::uint32_t> sorted(snapped.begin(), snapped.end());
  std::sort(sorted.begin(), sorted.end());
  const auto member = family_member(cov, sorted, {});
  REQUIRE(member.has_value());
  CHECK(tv_uniform_exact(*member, truth) <= eps);
}
