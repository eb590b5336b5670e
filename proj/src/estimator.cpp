#include "hypercircle/estimator.hpp"

#include <cmath>
#include <string>

namespace hypercircle {

double equilibration_residual(const RT0Field& p_h, const PwConstField& pi_f) {
  double worst = 0.0;
  for (int k = 0; k < p_h.mesh->num_triangles(); ++k) {
    worst = std::max(worst, std::abs(p_h.divergence(k) + pi_f.values(k)));
  }
  return worst;
}

double source_oscillation(const ScalarFunction& f, const PwConstField& pi_f) {
  const Mesh& m = *pi_f.mesh;
  const QuadRule& rule = triangle_gauss_rule(6);
  double s = 0.0;
  for (int k = 0; k < m.num_triangles(); ++k) {
    const double fk = pi_f.values(k);
    s += integrate(
        [&](Point p) {
          const double d = f(p) - fk;
          return d * d;
        },
        m.triangle(k), rule);
  }
  return std::sqrt(s);
}

PiecewiseVectorField flux_gap_field(const P1Field& u_h, const RT0Field& p_h) {
  // Self-contained: the returned field may outlive its arguments.
  const int nt = u_h.mesh->num_triangles();
  std::vector<Vec2> grads(nt);
  std::vector<RT0Field::Coefficients> coef(nt);
  for (int k = 0; k < nt; ++k) {
    grads[k] = u_h.gradient(k);
    coef[k] = p_h.coefficients(k);
  }
  return [grads = std::move(grads), coef = std::move(coef)](int k, Point p) {
    const auto& c = coef[k];
    return grads[k] - Vec2{c.a + c.c * p.x, c.b + c.c * p.y};
  };
}

double flux_gap(const P1Field& u_h, const RT0Field& p_h) {
  const Mesh& m = *u_h.mesh;
  const QuadRule& rule = triangle_gauss_rule(2);
  double s = 0.0;
  for (int k = 0; k < m.num_triangles(); ++k) {
    const Vec2 g = u_h.gradient(k);
    s += integrate(
        [&](Point p) {
          const Vec2 d = g - p_h.value(k, p);
          return dot(d, d);
        },
        m.triangle(k), rule);
  }
  return std::sqrt(s);
}

namespace {

void require_equilibrated(const RT0Field& p_h, const PwConstField& pi_f) {
  const double res = equilibration_residual(p_h, pi_f);
  if (!(res <= kEquilibrationTolerance)) {
    throw CertificateError("flux is not equilibrated: max |div p_h + pi_h f| = " + std::to_string(res));
  }
}

}  // namespace

double global_bound(const P1Field& u_h, const RT0Field& p_h, const ScalarFunction& f,
                    const PwConstField& pi_f, const ConstantsBundle& c) {
  require_equilibrated(p_h, pi_f);
  return c.c0h * source_oscillation(f, pi_f) + flux_gap(u_h, p_h);
}

void compose_local_bound(EstimateReport& r, double flux_gap_alpha_sq) {
  const ConstantsBundle& c = r.constants;
  r.data_osc = c.c0h * r.source_osc;
  r.global_bound = r.data_osc + r.flux_gap;
  r.err1 = std::sqrt(2.0 * c.cp * c.c0h * r.grad_sup * r.source_osc * r.flux_gap);
  r.err2 = std::sqrt(2.0 * c.c_of_h * r.grad_sup * r.flux_gap * r.flux_gap);
  r.err3 = std::sqrt(std::max(0.0, flux_gap_alpha_sq));
  r.local_bound = r.data_osc + std::sqrt(r.err1 * r.err1 + r.err2 * r.err2 + r.err3 * r.err3);
}

EstimateReport local_bound(const P1Field& u_h, const RT0Field& p_h, const ScalarFunction& f,
                           const PwConstField& pi_f, const WeightFunction& w,
                           const ConstantsBundle& c) {
  require_equilibrated(p_h, pi_f);
  EstimateReport r;
  r.h = c.h;
  r.grid_h = c.grid_h;
  r.eps = w.eps();
  r.constants = c;
  r.grad_sup = w.grad_sup();
  r.source_osc = source_oscillation(f, pi_f);
  r.flux_gap = flux_gap(u_h, p_h);
  r.equilibration_residual = equilibration_residual(p_h, pi_f);
  compose_local_bound(r, weighted_norm_sq(*u_h.mesh, flux_gap_field(u_h, p_h), w));
  return r;
}

double exact_local_error(const P1Field& u_h, const VectorFunction& exact_grad, const Rect& region) {
  const Mesh& m = *u_h.mesh;
  std::vector<Vec2> grads(m.num_triangles());
  for (int k = 0; k < m.num_triangles(); ++k) grads[k] = u_h.gradient(k);
  auto err = [&](int k, Point p) { return exact_grad(p) - grads[k]; };
  return std::sqrt(region_norm_sq(m, err, region, 6));
}

double exact_global_error(const P1Field& u_h, const VectorFunction& exact_grad) {
  return exact_local_error(u_h, exact_grad, u_h.mesh->domain().bounding_box());
}

}  // namespace hypercircle
