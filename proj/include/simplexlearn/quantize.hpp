#pragma once

#include "simplexlearn/bounding.hpp"
#include "simplexlearn/rng.hpp"
#include "simplexlearn/simplex.hpp"
#include "simplexlearn/types.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace simplexlearn {

inline constexpr std::uint64_t kDefaultCoveringCap = 10'000'000;
inline constexpr std::uint64_t kDefaultCandidateCap = 1'000'000;

enum class CoverMethod { kGrid, kRandom };
std::string_view cover_method_name(CoverMethod m);
CoverMethod parse_cover_method(std::string_view name);

// Points inside the ball such that every ball point is within `resolution`
// of one of them (by construction for grid, with high probability for random).
struct CoveringSet {
  BoundingBall ball;
  double resolution = 0.0;
  PointSet points;
  CoverMethod method = CoverMethod::kGrid;
};

// Vertex spacing for an eps_rep-representative family:
// alpha = vol_root / (5 theta_upper), eps_cov = alpha eps_rep / (K+1).
struct QuantizationParams {
  double eps_rep = 0.0;
  double alpha = 0.0;
  double vol_root = 0.0;
  Provenance vol_root_provenance = Provenance::kConfig;
  double eps_cov = 0.0;

  static QuantizationParams make(int dim, double eps_rep, double vol_root,
                                 double theta_upper,
                                 Provenance provenance = Provenance::kConfig);
};

// ceil((1 + 4R/eps_cov)^(2K)); family-too-large above `cap`.
std::uint64_t covering_size_bound(double radius, double eps_cov, int dim,
                                  std::uint64_t cap = kDefaultCoveringCap);

CoveringSet random_covering(const BoundingBall& ball, double eps_cov, RngStream& rng,
                            std::uint64_t cap = kDefaultCoveringCap);

// Axis-aligned lattice with spacing 2 eps_cov / sqrt(K) centred on the ball
// centre. Lattice points within R + eps_cov of the centre are kept; those
// outside the ball are projected onto its surface, which never increases the
// distance to any ball point.
CoveringSet grid_covering(const BoundingBall& ball, double eps_cov,
                          std::uint64_t cap = kDefaultCoveringCap);

struct CoverReport {
  double max_distance = 0.0;
  std::size_t probes = 0;
  bool passed = false;
};

CoverReport verify_cover(const CoveringSet& cov, std::size_t probes, RngStream& rng);

std::size_t nearest_point_index(const PointSet& points, const Point& x);

struct CandidateFilters {
  std::uint64_t candidate_cap = kDefaultCandidateCap;
  // Candidates with volume below this are dropped; <= 0 selects
  // 1e-12 * (2R)^K.
  double v_min = 0.0;
  // Keep only (slack*theta_lower, slack*theta_upper)-isoperimetric candidates.
  std::optional<IsoperimetryParams> isoperimetry;
  double slack = 2.0;
};

struct FilterRecord {
  std::uint64_t subsets = 0;
  std::uint64_t dropped_degenerate = 0;
  std::uint64_t dropped_isoperimetry = 0;
  double v_min = 0.0;
  std::optional<IsoperimetryParams> isoperimetry;
  double slack = 0.0;
};

// Candidate simplices stored as sorted (K+1)-tuples of covering indices.
// Coordinates are resolved on demand.
class CandidateFamily {
 public:
  CandidateFamily(std::shared_ptr<const PointSet> points, int dim,
                  std::vector<std::uint32_t> tuples, FilterRecord record);

  int dim() const { return dim_; }
  std::size_t size() const { return tuples_.size() / static_cast<std::size_t>(dim_ + 1); }
  std::span<const std::uint32_t> tuple(std::size_t i) const;
  Simplex simplex(std::size_t i) const;
  std::vector<Simplex> materialize() const;

  const PointSet& points() const { return *points_; }
  const FilterRecord& filters() const { return record_; }

 private:
  std::shared_ptr<const PointSet> points_;
  int dim_;
  std::vector<std::uint32_t> tuples_;
  FilterRecord record_;
};

double resolve_v_min(const CandidateFilters& filters, double radius, int dim);

// All (K+1)-subsets of the covering in lexicographic order, minus those that
// fail the filters.
CandidateFamily enumerate_candidates(const CoveringSet& cov, int dim,
                                     const CandidateFilters& filters = {}, int threads = 1);

// Whether the sorted index tuple survives the enumeration filters; returns
// the simplex if so.
std::optional<Simplex> family_member(const CoveringSet& cov, std::span<const std::uint32_t> tuple,
                                     const CandidateFilters& filters);

// Nearest covering point for each vertex of `s`, in vertex order.
std::vector<std::uint32_t> snap_to_cover(const CoveringSet& cov, const Simplex& s);

}  // namespace simplexlearn
