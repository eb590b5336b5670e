#include "hypercircle/weight.hpp"

#include <cmath>

namespace hypercircle {

namespace {

constexpr double kSideTol = 1e-12;

// One interval of the tensor-product layout: alpha_i is affine on it.
struct Piece {
  double lo = 0.0, hi = 0.0;
  double value_at_lo = 0.0;
  double slope = 0.0;
  double value(double t) const { return value_at_lo + slope * (t - lo); }
};

std::vector<Piece> layout(double a, double b, double eps, bool ramp_lo, bool ramp_hi) {
  std::vector<Piece> out;
  if (ramp_lo) out.push_back({a - eps, a, 0.0, 1.0 / eps});
  out.push_back({a, b, 1.0, 0.0});
  if (ramp_hi) out.push_back({b, b + eps, 1.0, -1.0 / eps});
  return out;
}

}  // namespace

WeightFunction::WeightFunction(const Rect& region, double eps, const Domain& domain,
                               GradNormConvention convention)
    : region_(region), eps_(eps), convention_(convention) {
  if (!(eps > 0.0)) throw std::invalid_argument("band width must be positive");
  if (!region.valid()) throw std::invalid_argument("degenerate region of interest");
  const Rect& box = domain.bounding_box();
  if (!box.contains(region, kSideTol) || !(domain.intersection_area(region) > 0.0)) {
    throw std::invalid_argument("region of interest is not inside the domain");
  }

  ramps_ = {region.x0 > box.x0 + kSideTol, region.x1 < box.x1 - kSideTol,
            region.y0 > box.y0 + kSideTol, region.y1 < box.y1 - kSideTol};
  support_ = {ramps_[0] ? std::max(box.x0, region.x0 - eps) : box.x0,
              ramps_[1] ? std::min(box.x1, region.x1 + eps) : box.x1,
              ramps_[2] ? std::max(box.y0, region.y0 - eps) : box.y0,
              ramps_[3] ? std::min(box.y1, region.y1 + eps) : box.y1};
  if (ramps_[0]) kinks_.push_back({true, region.x0 - eps}), kinks_.push_back({true, region.x0});
  if (ramps_[1]) kinks_.push_back({true, region.x1}), kinks_.push_back({true, region.x1 + eps});
  if (ramps_[2]) kinks_.push_back({false, region.y0 - eps}), kinks_.push_back({false, region.y0});
  if (ramps_[3]) kinks_.push_back({false, region.y1}), kinks_.push_back({false, region.y1 + eps});

  // |grad alpha|^2 = (a1' a2)^2 + (a1 a2')^2 is convex on every tensor cell,
  // so its max over cell ∩ domain sits at a corner of that rectangle.
  const auto xs = layout(region.x0, region.x1, eps, ramps_[0], ramps_[1]);
  const auto ys = layout(region.y0, region.y1, eps, ramps_[2], ramps_[3]);
  for (const Piece& px : xs) {
    for (const Piece& py : ys) {
      if (px.slope == 0.0 && py.slope == 0.0) continue;
      for (const Rect& piece : domain.pieces()) {
        const Rect cell = intersect(piece, {px.lo, px.hi, py.lo, py.hi});
        if (!cell.valid()) continue;
        for (double x : {cell.x0, cell.x1}) {
          for (double y : {cell.y0, cell.y1}) {
            const double gx = std::abs(px.slope * py.value(y));
            const double gy = std::abs(px.value(x) * py.slope);
            grad_sup_euclidean_ = std::max(grad_sup_euclidean_, std::hypot(gx, gy));
            grad_sup_axis_ = std::max(grad_sup_axis_, std::max(gx, gy));
          }
        }
      }
    }
  }
}

double WeightFunction::factor(double t, double lo, double hi, bool ramp_lo, bool ramp_hi) const {
  if (t < lo) {
    if (!ramp_lo) return 1.0;
    return t <= lo - eps_ ? 0.0 : 1.0 + (t - lo) / eps_;
  }
  if (t > hi) {
    if (!ramp_hi) return 1.0;
    return t >= hi + eps_ ? 0.0 : 1.0 - (t - hi) / eps_;
  }
  return 1.0;
}

double WeightFunction::slope(double t, double lo, double hi, bool ramp_lo, bool ramp_hi) const {
  if (ramp_lo && t > lo - eps_ && t < lo) return 1.0 / eps_;
  if (ramp_hi && t > hi && t < hi + eps_) return -1.0 / eps_;
  return 0.0;
}

double WeightFunction::operator()(Point p) const {
  return factor(p.x, region_.x0, region_.x1, ramps_[0], ramps_[1]) *
         factor(p.y, region_.y0, region_.y1, ramps_[2], ramps_[3]);
}

Vec2 WeightFunction::gradient(Point p) const {
  const double ax = factor(p.x, region_.x0, region_.x1, ramps_[0], ramps_[1]);
  const double ay = factor(p.y, region_.y0, region_.y1, ramps_[2], ramps_[3]);
  return {slope(p.x, region_.x0, region_.x1, ramps_[0], ramps_[1]) * ay,
          ax * slope(p.y, region_.y0, region_.y1, ramps_[2], ramps_[3])};
}

WeightFunction build_product_weight(const Rect& region, double eps, const Domain& domain,
                                    GradNormConvention convention) {
  return WeightFunction(region, eps, domain, convention);
}

namespace {

bool outside(const Triangle& K, const Rect& r) {
  double x0 = K.v[0].x, x1 = x0, y0 = K.v[0].y, y1 = y0;
  for (const Point& p : K.v) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  return x1 <= r.x0 || x0 >= r.x1 || y1 <= r.y0 || y0 >= r.y1;
}

}  // namespace

double weighted_norm_sq(const Mesh& m, const PiecewiseVectorField& g, const WeightFunction& w) {
  const QuadRule& rule = triangle_gauss_rule(4);
  double total = 0.0;
  for (int k = 0; k < m.num_triangles(); ++k) {
    const Triangle K = m.triangle(k);
    if (outside(K, w.support())) continue;
    total += integrate_with_kinks(
        [&](Point p) {
          const Vec2 v = g(k, p);
          return w(p) * dot(v, v);
        },
        K, w.kinks(), rule);
  }
  return total;
}

double region_norm_sq(const Mesh& m, const PiecewiseVectorField& g, const Rect& region, int degree) {
  const QuadRule& rule = triangle_gauss_rule(degree);
  double total = 0.0;
  for (int k = 0; k < m.num_triangles(); ++k) {
    const Triangle K = m.triangle(k);
    if (outside(K, region)) continue;
    const Polygon clipped = clip_to_rect(Polygon(K.v.begin(), K.v.end()), region);
    if (clipped.empty()) continue;
    for (const Triangle& piece : fan_triangulate(clipped, 1e-14 * K.area())) {
      total += integrate(
          [&](Point p) {
            const Vec2 v = g(k, p);
            return dot(v, v);
          },
          piece, rule);
    }
  }
  return total;
}

}  // namespace hypercircle
