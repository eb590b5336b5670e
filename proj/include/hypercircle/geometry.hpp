#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace hypercircle {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
  Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
inline bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

// Points and vectors share a representation.
using Point = Vec2;

/// Axis-aligned rectangle [x0,x1] x [y0,y1].
struct Rect {
  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
  bool valid() const { return x1 > x0 && y1 > y0; }
  bool contains(Point p, double slack = 0.0) const {
    return p.x >= x0 - slack && p.x <= x1 + slack && p.y >= y0 - slack && p.y <= y1 + slack;
  }
  bool contains(const Rect& r, double slack = 0.0) const {
    return r.x0 >= x0 - slack && r.x1 <= x1 + slack && r.y0 >= y0 - slack && r.y1 <= y1 + slack;
  }
};

inline Rect intersect(const Rect& a, const Rect& b) {
  return {std::max(a.x0, b.x0), std::min(a.x1, b.x1), std::max(a.y0, b.y0), std::min(a.y1, b.y1)};
}

struct Triangle {
  std::array<Point, 3> v;

  /// Signed area; positive for counterclockwise vertex order.
  double signed_area() const { return 0.5 * cross(v[1] - v[0], v[2] - v[0]); }
  double area() const { return std::abs(signed_area()); }
  Point centroid() const { return (1.0 / 3.0) * (v[0] + v[1] + v[2]); }
  Point from_barycentric(const std::array<double, 3>& l) const {
    return l[0] * v[0] + l[1] * v[1] + l[2] * v[2];
  }
  double longest_edge() const {
    return std::max({norm(v[1] - v[0]), norm(v[2] - v[1]), norm(v[0] - v[2])});
  }
};

/// Convex polygon, counterclockwise.
using Polygon = std::vector<Point>;

double polygon_area(const Polygon& poly);

/// Keeps the part of `poly` where sign * (coordinate - value) <= 0, coordinate
/// being x when `vertical` and y otherwise (Sutherland-Hodgman on one half-plane).
Polygon clip_half_plane(const Polygon& poly, bool vertical, double value, double sign);

/// Intersection of a convex polygon with an axis-aligned rectangle.
Polygon clip_to_rect(const Polygon& poly, const Rect& r);

/// Polygonal domain given as a union of non-overlapping axis-aligned rectangles.
class Domain {
 public:
  enum class Kind { Rectangle, LShape };

  static Domain rectangle(const Rect& r);
  static Domain unit_square() { return rectangle({0.0, 1.0, 0.0, 1.0}); }
  /// (0,1)^2 minus [0.5,1]^2.
  static Domain l_shape();

  Kind kind() const { return kind_; }
  const Rect& bounding_box() const { return box_; }
  const std::vector<Rect>& pieces() const { return pieces_; }
  double area() const;
  /// Closed-set membership.
  bool contains(Point p, double slack = 1e-14) const;
  /// Area of the intersection of `r` with the domain.
  double intersection_area(const Rect& r) const;

 private:
  Kind kind_ = Kind::Rectangle;
  Rect box_;
  std::vector<Rect> pieces_;
};

}  // namespace hypercircle
