#include "doctest.h"

#include <cmath>
#include <numbers>

#include "hypercircle/estimator.hpp"
#include "hypercircle/pipeline.hpp"

using namespace hypercircle;

namespace {

constexpr double kPi = std::numbers::pi;

MeshPtr square(int n) { return std::make_shared<const Mesh>(build_uniform_rect_mesh({0, 1, 0, 1}, n)); }

double sine_source(Point p) { return 2.0 * kPi * kPi * std::sin(kPi * p.x) * std::sin(kPi * p.y); }
Vec2 sine_grad(Point p) {
  return {kPi * std::cos(kPi * p.x) * std::sin(kPi * p.y), kPi * std::sin(kPi * p.x) * std::cos(kPi * p.y)};
}

struct Solved {
  ProblemSpec ps;
  P1Field u;
  PwConstField fh;
  RT0Field p;
};

Solved solve(const ProblemSpec& ps) {
  Solved s{ps, solve_p1(ps, ps.source), project_pi_h(ps.source, ps.mesh, ps.pure_neumann()), {}};
  s.p = solve_rt0(ps, s.fh).first;
  return s;
}

const Rect kS{0.375, 0.625, 0.375, 0.625};

}  // namespace

TEST_CASE("linear solution gives zero bounds") {
  ProblemSpec ps = ProblemSpec::dirichlet(square(8), [](Point) { return 0.0; });
  ps.dirichlet_data = [](Point p) { return p.x + p.y; };
  const Solved s = solve(ps);
  const ConstantsBundle c = compute_constants(ps, PoincareMode::ExactUnitSquare);
  CHECK(global_bound(s.u, s.p, ps.source, s.fh, c) <= 1e-9);
  const WeightFunction w = build_product_weight(kS, 0.3, Domain::unit_square());
  const EstimateReport r = local_bound(s.u, s.p, ps.source, s.fh, w, c);
  CHECK(r.err1 <= 1e-9);
  CHECK(r.err2 <= 1e-9);
  CHECK(r.err3 <= 1e-9);
  CHECK(r.local_bound <= 1e-9);
  CHECK(exact_local_error(s.u, [](Point) { return Vec2{1, 1}; }, kS) <= 1e-10);
}

TEST_CASE("report recomposition and certificates on the square") {
  for (int n : {8, 16}) {
    const ProblemSpec ps = ProblemSpec::dirichlet(square(n), sine_source);
    const Solved s = solve(ps);
    const ConstantsBundle c = compute_constants(ps, PoincareMode::ExactUnitSquare);
    for (double eps : {0.2, 0.3, 0.375}) {
      const WeightFunction w = build_product_weight(kS, eps, Domain::unit_square());
      const EstimateReport r = local_bound(s.u, s.p, ps.source, s.fh, w, c);
      CHECK(std::abs(r.local_bound - (r.data_osc + std::sqrt(r.err1 * r.err1 + r.err2 * r.err2 + r.err3 * r.err3))) <=
            1e-14);
      CHECK(std::abs(r.global_bound - (r.data_osc + r.flux_gap)) <= 1e-14);
      for (double x : {r.err1, r.err2, r.err3, r.data_osc, r.flux_gap}) CHECK(x >= 0.0);
      CHECK(r.equilibration_residual <= 1e-9);
      CHECK(r.grad_sup == w.grad_sup());
      CHECK(r.err1 * r.err1 ==
            doctest::Approx(2 * c.cp * c.c0h * w.grad_sup() * r.source_osc * r.flux_gap).epsilon(1e-13));
      CHECK(r.err2 * r.err2 == doctest::Approx(2 * c.c_of_h * w.grad_sup() * r.flux_gap * r.flux_gap).epsilon(1e-13));
      const double el = exact_local_error(s.u, sine_grad, kS);
      CHECK(r.local_bound >= el);
      CHECK(r.global_bound >= exact_global_error(s.u, sine_grad));
      CHECK(r.err3 <= r.flux_gap);
    }
  }
}

TEST_CASE("global bound example at n=8") {
  const ProblemSpec ps = ProblemSpec::dirichlet(square(8), sine_source);
  const Solved s = solve(ps);
  const ConstantsBundle c = compute_constants(ps, PoincareMode::ExactUnitSquare);
  CHECK(global_bound(s.u, s.p, ps.source, s.fh, c) == doctest::Approx(0.546).epsilon(0.05));
}

TEST_CASE("exact local error examples") {
  const ProblemSpec p32 = ProblemSpec::dirichlet(square(32), sine_source);
  CHECK(exact_local_error(solve_p1(p32, sine_source), sine_grad, kS) == doctest::Approx(0.031).epsilon(0.05));
  // straddling region: the clipped value lies between the values on the
  // enclosing and enclosed cell-aligned regions
  const P1Field u = solve_p1(ProblemSpec::dirichlet(square(8), sine_source), sine_source);
  const double inner = exact_local_error(u, sine_grad, {0.375, 0.625, 0.375, 0.625});
  const double mid = exact_local_error(u, sine_grad, {0.33, 0.66, 0.34, 0.67});
  const double outer = exact_local_error(u, sine_grad, {0.25, 0.75, 0.25, 0.75});
  CHECK(inner < mid);
  CHECK(mid < outer);
}

TEST_CASE("unequilibrated flux is refused") {
  const ProblemSpec ps = ProblemSpec::dirichlet(square(4), sine_source);
  Solved s = solve(ps);
  const ConstantsBundle c = compute_constants(ps, PoincareMode::ExactUnitSquare);
  s.p.flux(0) += 1e-3;
  CHECK(equilibration_residual(s.p, s.fh) > kEquilibrationTolerance);
  CHECK_THROWS_AS(global_bound(s.u, s.p, ps.source, s.fh, c), CertificateError);
  const WeightFunction w = build_product_weight(kS, 0.3, Domain::unit_square());
  CHECK_THROWS_AS(local_bound(s.u, s.p, ps.source, s.fh, w, c), CertificateError);
}

TEST_CASE("source oscillation") {
  auto m = square(8);
  const PwConstField fh = project_pi_h([](Point) { return 2.0; }, m, false);
  CHECK(source_oscillation([](Point) { return 2.0; }, fh) <= 1e-13);
  // f = x: per-triangle variance of x over right triangles with legs h is h^2/18
  const PwConstField fx = project_pi_h([](Point p) { return p.x; }, m, false);
  CHECK(source_oscillation([](Point p) { return p.x; }, fx) ==
        doctest::Approx(std::sqrt(1.0 / (18.0 * 64.0))).epsilon(1e-12));
}

TEST_CASE("mixed boundary certificate") {
  // u = sin(pi x) sin(pi y) with du/dn given on the bottom side
  auto m = std::make_shared<const Mesh>(build_uniform_rect_mesh({0, 1, 0, 1}, 16).with_boundary_labels(
      [](Point p) { return p.y < 1e-12 ? BoundaryLabel::Neumann : BoundaryLabel::Dirichlet; }));
  ProblemSpec ps = ProblemSpec::dirichlet(m, sine_source);
  ps.neumann_data = [](Point p) { return -sine_grad(p).y; };
  const Solved s = solve(ps);
  const ConstantsBundle c = compute_constants(ps, PoincareMode::CrBound);
  const Rect region{0.25, 0.5, 0.0, 0.25};
  const WeightFunction w = build_product_weight(region, 0.25, Domain::unit_square());
  CHECK_FALSE(w.ramps()[2]);
  const EstimateReport r = local_bound(s.u, s.p, ps.source, s.fh, w, c);
  CHECK(r.local_bound >= exact_local_error(s.u, sine_grad, region));
  CHECK(r.global_bound >= exact_global_error(s.u, sine_grad));
}
