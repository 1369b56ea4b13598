#include "simplexlearn/quantize.hpp"

#include "simplexlearn/error.hpp"
#include "simplexlearn/parallel.hpp"
#include "simplexlearn/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace simplexlearn {
namespace {

// C(n, r), saturating at `limit + 1`.
std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t r, std::uint64_t limit) {
  if (r > n) return 0;
  unsigned __int128 c = 1;
  for (std::uint64_t i = 0; i < r; ++i) {
    c = c * (n - i) / (i + 1);
    if (c > limit) return limit + 1;
  }
  return static_cast<std::uint64_t>(c);
}

void check_resolution(double eps_cov) {
  require(eps_cov > 0.0 && std::isfinite(eps_cov), ErrorCode::kParameter,
          "covering resolution must be positive");
}

// Advances `idx` to the next r-subset of {0..n-1} in lexicographic order.
bool next_combination(std::vector<std::uint32_t>& idx, std::uint32_t n) {
  const auto r = static_cast<std::uint32_t>(idx.size());
  std::uint32_t i = r;
  while (i > 0) {
    --i;
    if (idx[i] < n - r + i) {
      ++idx[i];
      for (std::uint32_t j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

VertexMatrix gather(const PointSet& points, std::span<const std::uint32_t> tuple, int dim) {
  VertexMatrix v(dim, dim + 1);
  for (int c = 0; c <= dim; ++c) v.col(c) = points[tuple[static_cast<std::size_t>(c)]];
  return v;
}

enum class Verdict { kKeep, kDegenerate, kIsoperimetry };

Verdict judge(const VertexMatrix& v, double v_min, const std::optional<IsoperimetryParams>& iso,
              double slack) {
  const double vol = raw_volume(v);
  if (!(vol >= v_min) || vol <= 0.0) return Verdict::kDegenerate;
  try {
    Simplex s(v);
    if (iso && !s.isoperimetry({slack * iso->theta_lower, slack * iso->theta_upper}))
      return Verdict::kIsoperimetry;
  } catch (const Error&) {
    return Verdict::kDegenerate;
  }
  return Verdict::kKeep;
}

}  // namespace

std::string_view cover_method_name(CoverMethod m) {
  return m == CoverMethod::kGrid ? "grid" : "random";
}

CoverMethod parse_cover_method(std::string_view name) {
  if (name == "grid") return CoverMethod::kGrid;
  if (name == "random") return CoverMethod::kRandom;
  fail(ErrorCode::kParameter, "unknown covering method '" + std::string(name) + "'");
}

QuantizationParams QuantizationParams::make(int dim, double eps_rep, double vol_root,
                                            double theta_upper, Provenance provenance) {
  check_dimension(dim);
  require(eps_rep > 0.0 && eps_rep < 1.0, ErrorCode::kParameter, "eps_rep must lie in (0, 1)");
  require(vol_root > 0.0 && std::isfinite(vol_root), ErrorCode::kParameter,
          "vol_root must be positive");
  require(theta_upper > 0.0, ErrorCode::kParameter, "theta_upper must be positive");
  QuantizationParams q;
  q.eps_rep = eps_rep;
  q.vol_root = vol_root;
  q.vol_root_provenance = provenance;
  q.alpha = vol_root / (5.0 * theta_upper);
  q.eps_cov = q.alpha * eps_rep / (dim + 1.0);
  return q;
}

std::uint64_t covering_size_bound(double radius, double eps_cov, int dim, std::uint64_t cap) {
  check_dimension(dim);
  require(radius > 0.0 && std::isfinite(radius), ErrorCode::kParameter, "radius must be positive");
  check_resolution(eps_cov);
  const double bound = std::ceil(std::pow(1.0 + 4.0 * radius / eps_cov, 2.0 * dim));
  if (!(bound <= static_cast<double>(cap))) {
    std::ostringstream msg;
    msg << "covering size bound " << bound << " exceeds cap " << cap << " (R=" << radius
        << ", eps_cov=" << eps_cov << ", K=" << dim << "); raise eps or lower K";
    fail(ErrorCode::kFamilyTooLarge, msg.str());
  }
  return static_cast<std::uint64_t>(bound);
}

CoveringSet random_covering(const BoundingBall& ball, double eps_cov, RngStream& rng,
                            std::uint64_t cap) {
  const int dim = static_cast<int>(ball.center.size());
  const std::uint64_t count = covering_size_bound(ball.radius, eps_cov, dim, cap);
  CoveringSet cov{ball, eps_cov, {}, CoverMethod::kRandom};
  cov.points.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i)
    cov.points.push_back(sample_uniform_ball(ball.center, ball.radius, rng));
  return cov;
}

CoveringSet grid_covering(const BoundingBall& ball, double eps_cov, std::uint64_t cap) {
  const int dim = static_cast<int>(ball.center.size());
  check_dimension(dim);
  check_resolution(eps_cov);
  require(ball.radius > 0.0, ErrorCode::kParameter, "ball radius must be positive");

  const double spacing = 2.0 * eps_cov / std::sqrt(static_cast<double>(dim));
  const double reach = ball.radius + eps_cov;
  const auto half = static_cast<std::int64_t>(std::floor(reach / spacing));
  const double side = 2.0 * static_cast<double>(half) + 1.0;
  const double box = std::pow(side, dim);
  if (!(box <= 64.0 * static_cast<double>(cap))) {
    std::ostringstream msg;
    msg << "grid covering needs about " << box << " lattice sites (R=" << ball.radius
        << ", eps_cov=" << eps_cov << ", K=" << dim << "), over cap " << cap;
    fail(ErrorCode::kFamilyTooLarge, msg.str());
  }

  CoveringSet cov{ball, eps_cov, {}, CoverMethod::kGrid};
  PointSet surface;
  std::vector<std::int64_t> z(static_cast<std::size_t>(dim), -half);
  while (true) {
    Point offset(dim);
    for (int d = 0; d < dim; ++d) offset(d) = spacing * static_cast<double>(z[static_cast<std::size_t>(d)]);
    const double dist = offset.norm();
    if (dist <= ball.radius) {
      cov.points.push_back(ball.center + offset);
    } else if (dist <= reach) {
      const Point projected = ball.center + offset * (ball.radius / dist);
      const bool duplicate = std::any_of(surface.begin(), surface.end(), [&](const Point& q) {
        return (q - projected).norm() <= 1e-12 * ball.radius;
      });
      if (!duplicate) {
        surface.push_back(projected);
        cov.points.push_back(projected);
      }
    }
    if (cov.points.size() > cap)
      fail(ErrorCode::kFamilyTooLarge, "grid covering exceeds cap " + std::to_string(cap) +
                                           "; raise eps or lower K");
    int d = dim - 1;
    while (d >= 0 && z[static_cast<std::size_t>(d)] == half) {
      z[static_cast<std::size_t>(d)] = -half;
      --d;
    }
    if (d < 0) break;
    ++z[static_cast<std::size_t>(d)];
  }
  return cov;
}

std::size_t nearest_point_index(const PointSet& points, const Point& x) {
  require(!points.empty(), ErrorCode::kInsufficientData, "nearest point in an empty set");
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double d = (points[i] - x).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

CoverReport verify_cover(const CoveringSet& cov, std::size_t probes, RngStream& rng) {
  require(probes >= 1, ErrorCode::kParameter, "need at least one probe");
  require(!cov.points.empty(), ErrorCode::kInsufficientData, "covering set is empty");
  CoverReport report;
  report.probes = probes;
  for (std::size_t p = 0; p < probes; ++p) {
    const Point x = sample_uniform_ball(cov.ball.center, cov.ball.radius, rng);
    const double d = (cov.points[nearest_point_index(cov.points, x)] - x).norm();
    report.max_distance = std::max(report.max_distance, d);
  }
  report.passed = report.max_distance <= cov.resolution * (1.0 + 1e-12);
  return report;
}

CandidateFamily::CandidateFamily(std::shared_ptr<const PointSet> points, int dim,
                                 std::vector<std::uint32_t> tuples, FilterRecord record)
    : points_(std::move(points)), dim_(dim), tuples_(std::move(tuples)), record_(std::move(record)) {}

std::span<const std::uint32_t> CandidateFamily::tuple(std::size_t i) const {
  const auto r = static_cast<std::size_t>(dim_ + 1);
  return std::span<const std::uint32_t>(tuples_).subspan(i * r, r);
}

Simplex CandidateFamily::simplex(std::size_t i) const {
  return Simplex(gather(*points_, tuple(i), dim_));
}

std::vector<Simplex> CandidateFamily::materialize() const {
  std::vector<Simplex> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(simplex(i));
  return out;
}

double resolve_v_min(const CandidateFilters& filters, double radius, int dim) {
  return filters.v_min > 0.0 ? filters.v_min : 1e-12 * std::pow(2.0 * radius, dim);
}

CandidateFamily enumerate_candidates(const CoveringSet& cov, int dim,
                                     const CandidateFilters& filters, int threads) {
  check_dimension(dim);
  const auto n = static_cast<std::uint64_t>(cov.points.size());
  const auto r = static_cast<std::uint64_t>(dim + 1);
  require(n >= r, ErrorCode::kInsufficientData,
          "covering has " + std::to_string(n) + " points, need at least " + std::to_string(r));
  require(n <= std::numeric_limits<std::uint32_t>::max(), ErrorCode::kFamilyTooLarge,
          "covering too large to index");
  const std::uint64_t subsets = binomial_capped(n, r, filters.candidate_cap);
  if (subsets > filters.candidate_cap) {
    std::ostringstream msg;
    msg << "C(" << n << ", " << r << ") candidates exceed cap " << filters.candidate_cap
        << "; raise eps or lower K";
    fail(ErrorCode::kTooManyCandidates, msg.str());
  }

  FilterRecord record;
  record.subsets = subsets;
  record.v_min = resolve_v_min(filters, cov.ball.radius, dim);
  record.isoperimetry = filters.isoperimetry;
  record.slack = filters.slack;

  std::vector<std::uint32_t> all;
  all.reserve(subsets * r);
  std::vector<std::uint32_t> idx(r);
  for (std::uint32_t i = 0; i < r; ++i) idx[i] = i;
  do {
    all.insert(all.end(), idx.begin(), idx.end());
  } while (next_combination(idx, static_cast<std::uint32_t>(n)));

  const int workers = std::max(1, threads);
  std::vector<std::vector<std::uint32_t>> kept(static_cast<std::size_t>(workers));
  std::vector<std::uint64_t> degenerate(static_cast<std::size_t>(workers), 0);
  std::vector<std::uint64_t> shape(static_cast<std::size_t>(workers), 0);
  parallel_for(subsets, workers, [&](std::size_t begin, std::size_t end, int w) {
    auto& out = kept[static_cast<std::size_t>(w)];
    for (std::size_t c = begin; c < end; ++c) {
      const std::span<const std::uint32_t> t(all.data() + c * r, r);
      switch (judge(gather(cov.points, t, dim), record.v_min, filters.isoperimetry,
                    filters.slack)) {
        case Verdict::kKeep: out.insert(out.end(), t.begin(), t.end()); break;
        case Verdict::kDegenerate: ++degenerate[static_cast<std::size_t>(w)]; break;
        case Verdict::kIsoperimetry: ++shape[static_cast<std::size_t>(w)]; break;
      }
    }
  });

  std::vector<std::uint32_t> tuples;
  for (std::size_t w = 0; w < kept.size(); ++w) {
    tuples.insert(tuples.end(), kept[w].begin(), kept[w].end());
    record.dropped_degenerate += degenerate[w];
    record.dropped_isoperimetry += shape[w];
  }
  require(!tuples.empty(), ErrorCode::kEmptyFamily,
          "every candidate was removed by the filters; relax the isoperimetry slack");
  return CandidateFamily(std::make_shared<const PointSet>(cov.points), dim, std::move(tuples),
                         std::move(record));
}

std::optional<Simplex> family_member(const CoveringSet& cov, std::span<const std::uint32_t> tuple,
                                     const CandidateFilters& filters) {
  const int dim = static_cast<int>(cov.ball.center.size());
  if (tuple.size() != static_cast<std::size_t>(dim + 1)) return std::nullopt;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (tuple[i] >= cov.points.size()) return std::nullopt;
    if (i > 0 && tuple[i] <= tuple[i - 1]) return std::nullopt;
  }
  const VertexMatrix v = gather(cov.points, tuple, dim);
  if (judge(v, resolve_v_min(filters, cov.ball.radius, dim), filters.isoperimetry,
            filters.slack) != Verdict::kKeep)
    return std::nullopt;
  return Simplex(v);
}

std::vector<std::uint32_t> snap_to_cover(const CoveringSet& cov, const Simplex& s) {
  std::vector<std::uint32_t> out;
  for (int i = 0; i <= s.dim(); ++i)
    out.push_back(static_cast<std::uint32_t>(nearest_point_index(cov.points, s.vertex(i))));
  return out;
}

}  // namespace simplexlearn
