#pragma once

#include "simplexlearn/rng.hpp"
#include "simplexlearn/types.hpp"

#include <span>
#include <vector>

namespace simplexlearn {

// Barycentric slack used by callers that do not pass an explicit tolerance.
// Barycentric coordinates are scale free, so this is already relative to the
// simplex size.
inline constexpr double kDefaultMembershipTol = 1e-9;

// |det(edge matrix)| / diameter^K below this is treated as rank deficient.
inline constexpr double kDegeneracyThreshold = 1e-12;

// Shape regularity bounds. theta_lower bounds the diameter, theta_upper the
// largest facet.
struct IsoperimetryParams {
  double theta_lower = 1.0;
  double theta_upper = 1.0;

  void validate() const;
};

struct IsoperimetryReport {
  bool satisfied = false;
  // lhs / rhs of A_max <= theta_upper * Vol^((K-1)/K)
  double facet_ratio = 0.0;
  // lhs / rhs of L_max <= theta_lower * K * Vol^(1/K)
  double diameter_ratio = 0.0;

  explicit operator bool() const { return satisfied; }
};

// A K-simplex in R^K, stored as its K x (K+1) vertex matrix. Instances are
// immutable and always non-degenerate.
class Simplex {
 public:
  explicit Simplex(const VertexMatrix& vertices);
  static Simplex from_points(std::span<const Point> vertices);

  int dim() const { return static_cast<int>(vertices_.rows()); }
  const VertexMatrix& vertices() const { return vertices_; }
  Point vertex(int i) const { return vertices_.col(i); }

  double volume() const { return volume_; }
  double diameter() const { return diameter_; }
  // Entry i is the (K-1)-measure of the facet opposite vertex i. For K = 1
  // every facet is a point and has measure 1.
  std::vector<double> facet_volumes() const;
  double max_facet_volume() const;

  Point centroid() const;

  // Weights phi with sum(phi) = 1 and V * phi = x.
  Weights barycentric(const Point& x) const;
  bool contains(const Point& x, double tol = kDefaultMembershipTol) const;
  // 1/Vol inside (zero tolerance), 0 outside.
  double density_at(const Point& x) const;

  IsoperimetryReport isoperimetry(const IsoperimetryParams& params) const;
  // Smallest (theta_lower, theta_upper) for which this simplex qualifies.
  IsoperimetryParams tight_isoperimetry() const;

  Simplex translated(const Point& shift) const;
  Simplex scaled(double factor) const;

 private:
  VertexMatrix vertices_;
  SquareMatrix edge_inverse_;
  double volume_ = 0.0;
  double diameter_ = 0.0;
};

// |det| / K! of the edge matrix; zero for degenerate inputs, never throws.
double raw_volume(const VertexMatrix& vertices);

double volume(const Simplex& s);
std::vector<double> facet_volumes(const Simplex& s);
double diameter(const Simplex& s);
IsoperimetryReport is_isoperimetric(const Simplex& s, const IsoperimetryParams& p);
Weights barycentric(const Simplex& s, const Point& x);
bool contains(const Simplex& s, const Point& x, double tol = kDefaultMembershipTol);
double density_at(const Simplex& s, const Point& x);

// The standard simplex with vertices 0, e_1, ..., e_K.
Simplex standard_simplex(int dim);

// Draws vertices uniformly in the ball of radius `scale` around the origin
// until the result is isoperimetric for `params`.
Simplex random_simplex(int dim, const IsoperimetryParams& params, double scale,
                       RngStream& rng, int max_attempts = 100000);

}  // namespace simplexlearn
