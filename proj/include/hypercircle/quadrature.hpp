#pragma once

#include <array>
#include <span>
#include <stdexcept>
#include <vector>

#include "hypercircle/geometry.hpp"

namespace hypercircle {

/// Symmetric rule on a triangle. Weights are normalized to sum to one, so a
/// physical integral is area * sum_i w_i f(x_i).
struct QuadRule {
  int degree = 0;
  std::vector<std::array<double, 3>> points;  // barycentric
  std::vector<double> weights;
};

/// Positive-weight symmetric rule exact up to `degree` (1..6). Degree 3 is
/// served by the 6-point degree-4 rule, which has no negative weight.
const QuadRule& triangle_gauss_rule(int degree);

template <class F>
double integrate(F&& f, const Triangle& K, const QuadRule& rule) {
  double s = 0.0;
  for (std::size_t i = 0; i < rule.weights.size(); ++i) {
    s += rule.weights[i] * f(K.from_barycentric(rule.points[i]));
  }
  return K.area() * s;
}

/// Line x = value (vertical) or y = value.
struct KinkLine {
  bool vertical = true;
  double value = 0.0;
};

/// Splits K along every kink line crossing its interior and fan-triangulates
/// each convex piece from its vertex average. Returns {K} untouched when no
/// line crosses. Pieces below 1e-14 |K| are dropped.
std::vector<Triangle> split_by_kinks(const Triangle& K, std::span<const KinkLine> kinks);

template <class F>
double integrate_with_kinks(F&& f, const Triangle& K, std::span<const KinkLine> kinks,
                            const QuadRule& rule) {
  double s = 0.0;
  for (const Triangle& piece : split_by_kinks(K, kinks)) s += integrate(f, piece, rule);
  return s;
}

/// Fan triangulation of a convex polygon from its vertex average.
std::vector<Triangle> fan_triangulate(const Polygon& poly, double min_area);

}  // namespace hypercircle
