#include "doctest.h"

#include <cmath>
#include <numbers>

#include "hypercircle/estimator.hpp"
#include "hypercircle/weight.hpp"
#include "../support/oracles.hpp"

using namespace hypercircle;

namespace {

const Rect kS{0.375, 0.625, 0.375, 0.625};

MeshPtr square(int n) { return std::make_shared<const Mesh>(build_uniform_rect_mesh({0, 1, 0, 1}, n)); }

// grad u_h - p_h with random nodal values and random fluxes
PiecewiseVectorField random_field(MeshPtr m, std::uint64_t seed) {
  P1Field u{m, seeded_vector(m->num_vertices(), seed)};
  RT0Field p{m, 0.1 * seeded_vector(m->num_edges(), seed + 1)};
  return flux_gap_field(u, p);
}

}  // namespace

TEST_CASE("definition on the square") {
  const WeightFunction w = build_product_weight(kS, 0.3, Domain::unit_square());
  CHECK(w(Point{0.5, 0.5}) == 1.0);
  CHECK(w(Point{0.05, 0.5}) == 0.0);
  CHECK(w(Point{0.225, 0.5}) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(w.grad_sup() == doctest::Approx(std::numbers::sqrt2 / 0.3).epsilon(1e-14));
  CHECK(w.grad_sup() == doctest::Approx(4.714).epsilon(1e-4));
  CHECK(w.grad_sup_axis() == doctest::Approx(1.0 / 0.3).epsilon(1e-14));
  CHECK(w.kinks().size() == 8);
  const Rect sup = w.support();
  CHECK(sup.x0 == doctest::Approx(0.075));
  CHECK(sup.x1 == doctest::Approx(0.925));

  const WeightFunction a = build_product_weight(kS, 0.3, Domain::unit_square(), GradNormConvention::Axis);
  CHECK(a.grad_sup() == a.grad_sup_axis());
}

TEST_CASE("rejections") {
  CHECK_THROWS_AS(build_product_weight(kS, 0.0, Domain::unit_square()), std::invalid_argument);
  CHECK_THROWS_AS(build_product_weight(kS, -0.1, Domain::unit_square()), std::invalid_argument);
  CHECK_THROWS_AS(build_product_weight({0.5, 1.2, 0.2, 0.4}, 0.1, Domain::unit_square()), std::invalid_argument);
  CHECK_THROWS_AS(build_product_weight({0.6, 0.9, 0.6, 0.9}, 0.1, Domain::l_shape()), std::invalid_argument);
}

TEST_CASE("probe grid") {
  for (double eps : {0.2, 0.3, 0.375}) {
    const WeightFunction w = build_product_weight(kS, eps, Domain::unit_square());
    const Rect outer{kS.x0 - eps, kS.x1 + eps, kS.y0 - eps, kS.y1 + eps};
    for (int i = 0; i <= 100; ++i) {
      for (int j = 0; j <= 100; ++j) {
        const Point p{i / 100.0, j / 100.0};
        const double a = w(p);
        CHECK(a >= 0.0);
        CHECK(a <= 1.0);
        if (kS.contains(p)) CHECK(std::abs(a - 1.0) <= 1e-14);
        if (!outer.contains(p)) CHECK(std::abs(a) <= 1e-14);
      }
    }
  }
}

TEST_CASE("grad sup bounds sampled gradients") {
  const WeightFunction w = build_product_weight(kS, 0.3, Domain::unit_square());
  double sampled = 0.0;
  for (int i = 0; i < 400; ++i) {
    for (int j = 0; j < 400; ++j) {
      const Point p{(i + 0.5) / 400.0, (j + 0.5) / 400.0};
      sampled = std::max(sampled, norm(w.gradient(p)));
    }
  }
  CHECK(sampled <= w.grad_sup() * (1.0 + 1e-14));
  CHECK(sampled >= 0.98 * w.grad_sup());
}

TEST_CASE("ramps suppressed on the boundary") {
  const WeightFunction side = build_product_weight({0.0, 0.5, 0.25, 0.75}, 0.2, Domain::unit_square());
  CHECK_FALSE(side.ramps()[0]);
  CHECK(side.ramps()[1]);
  CHECK(side(Point{0.0, 0.5}) == 1.0);
  CHECK(side.grad_sup() == doctest::Approx(std::numbers::sqrt2 / 0.2));

  const WeightFunction strip = build_product_weight({0.0, 1.0, 0.25, 0.75}, 0.2, Domain::unit_square());
  CHECK(strip.grad_sup() == doctest::Approx(1.0 / 0.2));
  CHECK(strip.grad_sup_euclidean() == strip.grad_sup_axis());

  const WeightFunction all = build_product_weight({0, 1, 0, 1}, 0.3, Domain::unit_square());
  CHECK(all.grad_sup() == 0.0);
}

TEST_CASE("l-shape weight") {
  const WeightFunction w = build_product_weight(kS, 0.375, Domain::l_shape());
  CHECK(w(Point{0.45, 0.6}) == 1.0);
  CHECK(w(Point{0.0, 0.5}) == 0.0);
  CHECK(w.grad_sup() == doctest::Approx(std::numbers::sqrt2 / 0.375));
  const Rect sup = w.support();
  CHECK(sup.x0 == doctest::Approx(0.0));
  CHECK(sup.x1 <= 1.0);
}

TEST_CASE("unweighted limit") {
  auto m = square(8);
  const auto g = random_field(m, 5);
  const WeightFunction w = build_product_weight({0, 1, 0, 1}, 0.3, Domain::unit_square());
  const double plain = region_norm_sq(*m, g, {0, 1, 0, 1}, 4);
  CHECK(std::abs(weighted_norm_sq(*m, g, w) - plain) <= 1e-13 * plain);
}

TEST_CASE("constant field") {
  auto m = square(8);
  const PiecewiseVectorField one = [](int, Point) { return Vec2{1.0, 0.0}; };
  const WeightFunction w = build_product_weight(kS, 0.3, Domain::unit_square());
  const double v = weighted_norm_sq(*m, one, w);
  CHECK(v >= 0.0625);
  CHECK(v <= 0.7225);
  // (0.25 + 0.3)^2: each factor integrates to |S side| + eps
  CHECK(v == doctest::Approx(0.3025).epsilon(1e-13));
  CHECK(region_norm_sq(*m, one, kS, 1) == doctest::Approx(0.0625).epsilon(1e-14));
}

TEST_CASE("composite refinement oracle") {
  // eps = 0.3125 puts every kink on the 1/64 subgrid, where composite
  // quadrature is exact.
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    auto m = square(8);
    const auto g = random_field(m, seed);
    const WeightFunction w = build_product_weight(kS, 0.3125, Domain::unit_square());
    const double ref = oracle::composite_weighted_norm_sq(*m, g, w, 3);
    CHECK(std::abs(weighted_norm_sq(*m, g, w) - ref) <= 1e-10 * ref);
  }
  auto l = std::make_shared<const Mesh>(build_uniform_lshape_mesh(8));
  const auto g = random_field(l, 9);
  const WeightFunction w = build_product_weight(kS, 0.3125, Domain::l_shape());
  const double ref = oracle::composite_weighted_norm_sq(*l, g, w, 3);
  CHECK(std::abs(weighted_norm_sq(*l, g, w) - ref) <= 1e-10 * ref);
}

TEST_CASE("non-aligned kinks converge to the clipped value") {
  auto m = square(8);
  const auto g = random_field(m, 4);
  const WeightFunction w = build_product_weight(kS, 0.3, Domain::unit_square());
  const double exact = weighted_norm_sq(*m, g, w);
  const double e3 = std::abs(oracle::composite_weighted_norm_sq(*m, g, w, 3) - exact);
  const double e5 = std::abs(oracle::composite_weighted_norm_sq(*m, g, w, 5) - exact);
  CHECK(e5 < e3);
  CHECK(e5 <= 1e-4 * exact);
}

TEST_CASE("norm chain and monotonicity") {
  auto m = square(16);
  const auto g = random_field(m, 12);
  const double whole = region_norm_sq(*m, g, {0, 1, 0, 1}, 4);
  double prev = 0.0;
  for (double eps : {0.1, 0.2, 0.25, 0.3, 0.35, 0.375}) {
    const WeightFunction w = build_product_weight(kS, eps, Domain::unit_square());
    const double s = region_norm_sq(*m, g, kS, 4);
    const double a = weighted_norm_sq(*m, g, w);
    const double o = region_norm_sq(*m, g, w.support(), 4);
    CHECK(s <= a + 1e-12);
    CHECK(a <= o + 1e-12);
    CHECK(o <= whole + 1e-12);
    CHECK(a >= prev);
    prev = a;
  }
}
