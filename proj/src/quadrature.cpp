#include "hypercircle/quadrature.hpp"

#include <limits>
#include <string>

namespace hypercircle {

namespace {

void add_center(QuadRule& r, double w) { r.points.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}); r.weights.push_back(w); }

void add_orbit3(QuadRule& r, double a, double w) {
  const double b = 1.0 - 2.0 * a;
  for (const auto& p : {std::array{a, a, b}, std::array{a, b, a}, std::array{b, a, a}}) {
    r.points.push_back(p);
    r.weights.push_back(w);
  }
}

void add_orbit6(QuadRule& r, double a, double b, double w) {
  const double c = 1.0 - a - b;
  for (const auto& p : {std::array{a, b, c}, std::array{a, c, b}, std::array{b, a, c},
                        std::array{b, c, a}, std::array{c, a, b}, std::array{c, b, a}}) {
    r.points.push_back(p);
    r.weights.push_back(w);
  }
}

// Dunavant-type rules; orbit parameters refined to 20 digits against the
// monomial moment equations.
std::array<QuadRule, 7> make_rules() {
  std::array<QuadRule, 7> rules;

  QuadRule r1;
  add_center(r1, 1.0);
  r1.degree = 1;
  rules[1] = r1;

  QuadRule r2;
  add_orbit3(r2, 1.0 / 6.0, 1.0 / 3.0);
  r2.degree = 2;
  rules[2] = r2;

  QuadRule r4;
  add_orbit3(r4, 0.44594849091596488632, 0.2233815896780114657);
  add_orbit3(r4, 0.09157621350977074346, 0.10995174365532186764);
  r4.degree = 4;
  rules[3] = r4;
  rules[3].degree = 3;
  rules[4] = r4;

  QuadRule r5;
  add_center(r5, 0.225);
  add_orbit3(r5, 0.47014206410511508977, 0.13239415278850618074);
  add_orbit3(r5, 0.1012865073234563388, 0.1259391805448271526);
  r5.degree = 5;
  rules[5] = r5;

  QuadRule r6;
  add_orbit3(r6, 0.24928674517091042129, 0.11678627572637936603);
  add_orbit3(r6, 0.06308901449150222834, 0.050844906370206816921);
  add_orbit6(r6, 0.31035245103378440542, 0.053145049844816947353, 0.082851075618373575194);
  r6.degree = 6;
  rules[6] = r6;
  return rules;
}

}  // namespace

const QuadRule& triangle_gauss_rule(int degree) {
  static const std::array<QuadRule, 7> rules = make_rules();
  if (degree < 1 || degree > 6) {
    throw std::invalid_argument("unsupported quadrature degree " + std::to_string(degree));
  }
  return rules[degree];
}

std::vector<Triangle> fan_triangulate(const Polygon& poly, double min_area) {
  std::vector<Triangle> out;
  if (poly.size() < 3) return out;
  if (poly.size() == 3) {
    Triangle t{{poly[0], poly[1], poly[2]}};
    if (t.area() >= min_area) out.push_back(t);
    return out;
  }
  Point c{0.0, 0.0};
  for (const Point& p : poly) c += p;
  c *= 1.0 / static_cast<double>(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) {
    Triangle t{{c, poly[i], poly[(i + 1) % poly.size()]}};
    if (t.area() >= min_area) out.push_back(t);
  }
  return out;
}

std::vector<Triangle> split_by_kinks(const Triangle& K, std::span<const KinkLine> kinks) {
  std::vector<Polygon> pieces;
  Polygon start(K.v.begin(), K.v.end());
  if (K.signed_area() < 0.0) std::swap(start[1], start[2]);
  pieces.push_back(std::move(start));

  bool split = false;
  for (const KinkLine& line : kinks) {
    std::vector<Polygon> next;
    for (auto& poly : pieces) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (const Point& p : poly) {
        const double c = line.vertical ? p.x : p.y;
        lo = std::min(lo, c);
        hi = std::max(hi, c);
      }
      if (!(lo < line.value && line.value < hi)) {
        next.push_back(std::move(poly));
        continue;
      }
      split = true;
      for (double sign : {1.0, -1.0}) {
        Polygon part = clip_half_plane(poly, line.vertical, line.value, sign);
        if (!part.empty()) next.push_back(std::move(part));
      }
    }
    pieces = std::move(next);
  }
  if (!split) return {K};

  const double min_area = 1e-14 * K.area();
  std::vector<Triangle> out;
  for (const auto& poly : pieces) {
    for (const Triangle& t : fan_triangulate(poly, min_area)) out.push_back(t);
  }
  return out;
}

}  // namespace hypercircle
