#pragma once

#include "simplexlearn/simplex.hpp"

#include <initializer_list>
#include <vector>

namespace fixtures {

inline simplexlearn::Point pt(std::initializer_list<double> xs) {
  simplexlearn::Point p(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) p(i++) = x;
  return p;
}

inline simplexlearn::Simplex simplex(std::initializer_list<std::initializer_list<double>> vs) {
  std::vector<simplexlearn::Point> points;
  for (const auto& v : vs) points.push_back(pt(v));
  return simplexlearn::Simplex::from_points(points);
}

inline simplexlearn::Simplex interval(double a, double b) { return simplex({{a}, {b}}); }

// Uniform box that contains `s`.
struct Box {
  simplexlearn::Point lo;
  simplexlearn::Point hi;
  double volume() const { return (hi - lo).prod(); }
};

inline Box bounding_box(const simplexlearn::Simplex& s) {
  return {s.vertices().rowwise().minCoeff(), s.vertices().rowwise().maxCoeff()};
}

}  // namespace fixtures
