#include "hypercircle/geometry.hpp"

namespace hypercircle {

double polygon_area(const Polygon& poly) {
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    a += cross(poly[i], poly[(i + 1) % poly.size()]);
  }
  return 0.5 * a;
}

Polygon clip_half_plane(const Polygon& poly, bool vertical, double value, double sign) {
  auto dist = [&](Point p) { return sign * ((vertical ? p.x : p.y) - value); };
  Polygon out;
  out.reserve(poly.size() + 2);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point a = poly[i];
    const Point b = poly[(i + 1) % poly.size()];
    const double da = dist(a);
    const double db = dist(b);
    if (da <= 0.0) out.push_back(a);
    if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) {
      const double t = da / (da - db);
      Point c = a + t * (b - a);
      // Snap the clipped coordinate so both halves share the exact cut line.
      (vertical ? c.x : c.y) = value;
      out.push_back(c);
    }
  }
  if (out.size() < 3) out.clear();
  return out;
}

Polygon clip_to_rect(const Polygon& poly, const Rect& r) {
  Polygon p = clip_half_plane(poly, true, r.x1, 1.0);
  p = clip_half_plane(p, true, r.x0, -1.0);
  p = clip_half_plane(p, false, r.y1, 1.0);
  return clip_half_plane(p, false, r.y0, -1.0);
}

Domain Domain::rectangle(const Rect& r) {
  Domain d;
  d.kind_ = Kind::Rectangle;
  d.box_ = r;
  d.pieces_ = {r};
  return d;
}

Domain Domain::l_shape() {
  Domain d;
  d.kind_ = Kind::LShape;
  d.box_ = {0.0, 1.0, 0.0, 1.0};
  d.pieces_ = {{0.0, 1.0, 0.0, 0.5}, {0.0, 0.5, 0.5, 1.0}};
  return d;
}

double Domain::area() const {
  double a = 0.0;
  for (const auto& p : pieces_) a += p.area();
  return a;
}

bool Domain::contains(Point p, double slack) const {
  return std::any_of(pieces_.begin(), pieces_.end(),
                     [&](const Rect& r) { return r.contains(p, slack); });
}

double Domain::intersection_area(const Rect& r) const {
  double a = 0.0;
  for (const auto& p : pieces_) {
    const Rect c = intersect(p, r);
    if (c.valid()) a += c.area();
  }
  return a;
}

}  // namespace hypercircle
