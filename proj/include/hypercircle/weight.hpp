#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "hypercircle/mesh.hpp"
#include "hypercircle/quadrature.hpp"

namespace hypercircle {

/// How the sup of |grad alpha| is measured: Euclidean length of the gradient,
/// or its largest component.
enum class GradNormConvention { Euclidean, Axis };

/// Cutoff alpha(x,y) = alpha_1(x) alpha_2(y) for a rectangular region S,
/// each factor ramping linearly from 1 on S to 0 over a band of width eps.
/// Sides of S lying on the boundary of the domain get no ramp.
class WeightFunction {
 public:
  WeightFunction(const Rect& region, double eps, const Domain& domain,
                 GradNormConvention convention = GradNormConvention::Euclidean);

  double operator()(Point p) const;
  /// Gradient away from the kink lines.
  Vec2 gradient(Point p) const;

  const Rect& region() const { return region_; }
  double eps() const { return eps_; }
  /// Bounding rectangle of the support, clipped to the domain's box.
  const Rect& support() const { return support_; }
  const std::vector<KinkLine>& kinks() const { return kinks_; }
  GradNormConvention convention() const { return convention_; }

  /// Exact ess-sup of the gradient norm over the domain, per the convention.
  double grad_sup() const {
    return convention_ == GradNormConvention::Euclidean ? grad_sup_euclidean_ : grad_sup_axis_;
  }
  double grad_sup_euclidean() const { return grad_sup_euclidean_; }
  double grad_sup_axis() const { return grad_sup_axis_; }

  /// Ramps present on the x0, x1, y0, y1 sides of the region.
  const std::array<bool, 4>& ramps() const { return ramps_; }

 private:
  double factor(double t, double lo, double hi, bool ramp_lo, bool ramp_hi) const;
  double slope(double t, double lo, double hi, bool ramp_lo, bool ramp_hi) const;

  Rect region_;
  double eps_;
  GradNormConvention convention_;
  std::array<bool, 4> ramps_{};
  Rect support_;
  std::vector<KinkLine> kinks_;
  double grad_sup_euclidean_ = 0.0;
  double grad_sup_axis_ = 0.0;
};

/// Rejects eps <= 0 and regions that are not inside the domain's bounding
/// box or miss the domain. For non-rectangular domains the effective region
/// is region ∩ domain.
WeightFunction build_product_weight(const Rect& region, double eps, const Domain& domain,
                                    GradNormConvention convention = GradNormConvention::Euclidean);

/// Vector field that is polynomial on each triangle.
using PiecewiseVectorField = std::function<Vec2(int tri, Point p)>;

/// sum_K integral over K of alpha |g|^2, exact for per-triangle polynomials
/// of degree <= 1 (degree-4 rule on kink-split pieces).
double weighted_norm_sq(const Mesh& m, const PiecewiseVectorField& g, const WeightFunction& w);

/// Unweighted sum_K integral over K of |g|^2 restricted to `region`.
double region_norm_sq(const Mesh& m, const PiecewiseVectorField& g, const Rect& region, int degree);

}  // namespace hypercircle
