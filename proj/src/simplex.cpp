#include "simplexlearn/simplex.hpp"

#include "simplexlearn/error.hpp"
#include "simplexlearn/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace simplexlearn {
namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Ratios within this of 1 count as satisfying the (non-strict) inequality, so
// that exact cases like the standard triangle at its tight bounds survive
// rounding.
constexpr double kRatioSlack = 1e-12;

SquareMatrix edge_matrix(const VertexMatrix& v) {
  const int k = static_cast<int>(v.rows());
  SquareMatrix e(k, k);
  for (int j = 0; j < k; ++j) e.col(j) = v.col(j + 1) - v.col(0);
  return e;
}

double max_pairwise_distance(const VertexMatrix& v) {
  double best = 0.0;
  for (int i = 0; i < v.cols(); ++i)
    for (int j = i + 1; j < v.cols(); ++j)
      best = std::max(best, (v.col(i) - v.col(j)).norm());
  return best;
}

}  // namespace

void IsoperimetryParams::validate() const {
  require(std::isfinite(theta_lower) && theta_lower > 0.0 &&
              std::isfinite(theta_upper) && theta_upper > 0.0,
          ErrorCode::kParameter, "isoperimetry parameters must be positive and finite");
}

double raw_volume(const VertexMatrix& vertices) {
  const int k = static_cast<int>(vertices.rows());
  return std::abs(edge_matrix(vertices).determinant()) / factorial(k);
}

Simplex::Simplex(const VertexMatrix& vertices) : vertices_(vertices) {
  const int k = static_cast<int>(vertices_.rows());
  check_dimension(k);
  require(vertices_.cols() == k + 1, ErrorCode::kDegenerateSimplex,
          "a " + std::to_string(k) + "-simplex needs " + std::to_string(k + 1) +
              " vertices, got " + std::to_string(vertices_.cols()));
  require(vertices_.allFinite(), ErrorCode::kDegenerateSimplex,
          "vertex coordinates must be finite");

  const SquareMatrix edges = edge_matrix(vertices_);
  const double det = edges.determinant();
  diameter_ = max_pairwise_distance(vertices_);
  require(diameter_ > 0.0 && std::abs(det) / std::pow(diameter_, k) >= kDegeneracyThreshold,
          ErrorCode::kDegenerateSimplex, "vertices are affinely dependent");
  volume_ = std::abs(det) / factorial(k);
  edge_inverse_ = edges.inverse();
}

Simplex Simplex::from_points(std::span<const Point> vertices) {
  require(!vertices.empty(), ErrorCode::kDegenerateSimplex, "no vertices given");
  const auto k = vertices.front().size();
  require(k >= 1 && k <= kMaxDim, ErrorCode::kDimension, "unsupported dimension");
  require(static_cast<Eigen::Index>(vertices.size()) == k + 1, ErrorCode::kDegenerateSimplex,
          "a " + std::to_string(k) + "-simplex needs " + std::to_string(k + 1) +
              " vertices, got " + std::to_string(vertices.size()));
  VertexMatrix v(k, k + 1);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    require(vertices[i].size() == k, ErrorCode::kDimension, "vertex dimension mismatch");
    v.col(static_cast<Eigen::Index>(i)) = vertices[i];
  }
  return Simplex(v);
}

std::vector<double> Simplex::facet_volumes() const {
  const int k = dim();
  std::vector<double> out(static_cast<std::size_t>(k + 1), 1.0);
  if (k == 1) return out;
  const double norm = factorial(k - 1);
  for (int skip = 0; skip <= k; ++skip) {
    // Facet opposite `skip`: its K vertices, measured through the Gram
    // determinant of the K x (K-1) edge matrix.
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim> w(k, k - 1);
    int base = skip == 0 ? 1 : 0;
    int col = 0;
    for (int i = 0; i <= k; ++i) {
      if (i == skip || i == base) continue;
      w.col(col++) = vertices_.col(i) - vertices_.col(base);
    }
    const double gram = (w.transpose() * w).determinant();
    out[static_cast<std::size_t>(skip)] = std::sqrt(std::max(gram, 0.0)) / norm;
  }
  return out;
}

double Simplex::max_facet_volume() const {
  const auto f = facet_volumes();
  return *std::max_element(f.begin(), f.end());
}

Point Simplex::centroid() const { return vertices_.rowwise().mean(); }

Weights Simplex::barycentric(const Point& x) const {
  require(x.size() == dim(), ErrorCode::kDimension, "point dimension mismatch");
  const int k = dim();
  Weights phi(k + 1);
  const Point rest = edge_inverse_ * (x - vertices_.col(0));
  phi.tail(k) = rest;
  phi(0) = 1.0 - rest.sum();
  return phi;
}

bool Simplex::contains(const Point& x, double tol) const {
  return (barycentric(x).array() >= -tol).all();
}

double Simplex::density_at(const Point& x) const {
  return contains(x, 0.0) ? 1.0 / volume_ : 0.0;
}

IsoperimetryReport Simplex::isoperimetry(const IsoperimetryParams& params) const {
  params.validate();
  const double k = dim();
  IsoperimetryReport r;
  r.facet_ratio =
      max_facet_volume() / (params.theta_upper * std::pow(volume_, (k - 1.0) / k));
  r.diameter_ratio = diameter_ / (params.theta_lower * k * std::pow(volume_, 1.0 / k));
  r.satisfied = r.facet_ratio <= 1.0 + kRatioSlack && r.diameter_ratio <= 1.0 + kRatioSlack;
  return r;
}

IsoperimetryParams Simplex::tight_isoperimetry() const {
  const double k = dim();
  return {diameter_ / (k * std::pow(volume_, 1.0 / k)),
          max_facet_volume() / std::pow(volume_, (k - 1.0) / k)};
}

Simplex Simplex::translated(const Point& shift) const {
  VertexMatrix v = vertices_;
  v.colwise() += shift;
  return Simplex(v);
}

Simplex Simplex::scaled(double factor) const { return Simplex(vertices_ * factor); }

double volume(const Simplex& s) { return s.volume(); }
std::vector<double> facet_volumes(const Simplex& s) { return s.facet_volumes(); }
double diameter(const Simplex& s) { return s.diameter(); }
IsoperimetryReport is_isoperimetric(const Simplex& s, const IsoperimetryParams& p) {
  return s.isoperimetry(p);
}
Weights barycentric(const Simplex& s, const Point& x) { return s.barycentric(x); }
bool contains(const Simplex& s, const Point& x, double tol) {
  require(tol >= 0.0, ErrorCode::kParameter, "membership tolerance must be nonnegative");
  return s.contains(x, tol);
}
double density_at(const Simplex& s, const Point& x) { return s.density_at(x); }

Simplex standard_simplex(int dim) {
  check_dimension(dim);
  VertexMatrix v = VertexMatrix::Zero(dim, dim + 1);
  for (int i = 0; i < dim; ++i) v(i, i + 1) = 1.0;
  return Simplex(v);
}

Simplex random_simplex(int dim, const IsoperimetryParams& params, double scale,
                       RngStream& rng, int max_attempts) {
  check_dimension(dim);
  params.validate();
  require(scale > 0.0 && std::isfinite(scale), ErrorCode::kParameter, "scale must be positive");
  const Point origin = Point::Zero(dim);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    VertexMatrix v(dim, dim + 1);
    for (int i = 0; i <= dim; ++i) v.col(i) = sample_uniform_ball(origin, scale, rng);
    if (raw_volume(v) <= 0.0) continue;
    try {
      Simplex s(v);
      if (s.isoperimetry(params)) return s;
    } catch (const Error&) {
      // degenerate draw, try again
    }
  }
  fail(ErrorCode::kInfeasibleParams,
       "no isoperimetric simplex found after " + std::to_string(max_attempts) +
           " attempts; loosen theta_lower/theta_upper");
}

}  // namespace simplexlearn
