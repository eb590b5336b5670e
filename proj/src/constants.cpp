#include "hypercircle/constants.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hypercircle {

ProjectionConstant c0_of_mesh(const Mesh& m) {
  double c0 = 0.0;
  for (double hk : m.h_K()) c0 = std::max(c0, hk / kBesselJ11 / m.h());
  return {c0, c0 * m.h()};
}

double cr_eigenvalue_lower_bound(double lambda_h, double h) {
  const double ch = 0.1893 * h;
  return lambda_h / (1.0 + ch * ch * lambda_h);
}

double poincare_constant(const ProblemSpec& ps, PoincareMode mode) {
  ps.validate();
  const Mesh& m = *ps.mesh;
  if (mode == PoincareMode::ExactUnitSquare) {
    const Rect& box = m.domain().bounding_box();
    const bool unit_square = m.domain().kind() == Domain::Kind::Rectangle && box.x0 == 0.0 &&
                             box.x1 == 1.0 && box.y0 == 0.0 && box.y1 == 1.0;
    bool all_dirichlet = true;
    for (BoundaryLabel l : m.boundary_labels()) all_dirichlet &= l == BoundaryLabel::Dirichlet;
    if (!unit_square || !all_dirichlet) {
      throw std::invalid_argument(
          "exact Poincare constant is only known for the unit square with a full Dirichlet boundary");
    }
    return 1.0 / (std::numbers::sqrt2 * std::numbers::pi);
  }
  const double lambda_h = solve_cr_smallest_eig(ps);
  return 1.0 / std::sqrt(cr_eigenvalue_lower_bound(lambda_h, m.h()));
}

KappaOperator::KappaOperator(const ProblemSpec& ps)
    : mesh_(ps.mesh), p1_(ps.homogeneous()), mixed_(ps.homogeneous()) {
  const Mesh& m = *mesh_;
  const int nt = m.num_triangles();
  mean_zero_ = ps.pure_neumann();

  Triplets lt, ct, bt;
  lt.reserve(3 * nt);
  ct.reserve(9 * nt);
  bt.reserve(nt);
  for (int k = 0; k < nt; ++k) {
    const Triangle K = m.triangle(k);
    const auto grads = barycentric_gradients(K);
    const auto& tv = m.triangles()[k];
    const auto& te = m.tri_edges()[k];
    const Point centroid = K.centroid();
    for (int i = 0; i < 3; ++i) {
      lt.emplace_back(tv[i], k, m.area(k) / 3.0);
      for (int j = 0; j < 3; ++j) {
        // integral over K of (x - P_j) / (2|K|) is (centroid - P_j) / 2
        ct.emplace_back(tv[i], te[j].edge, te[j].sign * 0.5 * dot(grads[i], centroid - K.v[j]));
      }
    }
    bt.emplace_back(k, k, m.area(k));
  }
  load_.resize(m.num_vertices(), nt);
  load_.setFromTriplets(lt.begin(), lt.end());
  coupling_.resize(m.num_vertices(), m.num_edges());
  coupling_.setFromTriplets(ct.begin(), ct.end());
  pw_mass_.resize(nt, nt);
  pw_mass_.setFromTriplets(bt.begin(), bt.end());
  rt_mass_ = rt0_mass(m);
}

std::pair<P1Field, RT0Field> KappaOperator::apply_parts(const Vector& fh) const {
  P1Field u = p1_.solve(load_ * fh);
  const Vector tri_rhs = -(pw_mass_ * fh);
  MixedSolution t = mixed_.solve_raw(Vector::Zero(mesh_->num_edges()), tri_rhs);
  return {std::move(u), RT0Field{mesh_, std::move(t.flux)}};
}

Vector KappaOperator::apply_gram(const Vector& fh) const {
  const auto [u, t] = apply_parts(fh);
  // G = R^T (K R - C T) + T^T (M T - C^T R), with R^T y = L^T K^{-1} y and
  // T^T z = -D (mu-part of the mixed solve with flux right-hand side z).
  const Vector y = p1_.full_stiffness() * u.values - coupling_ * t.flux;
  const Vector z = rt_mass_ * t.flux - coupling_.transpose() * u.values;
  const Vector r_adj = load_.transpose() * p1_.solve(y).values;
  const Vector t_adj = -(pw_mass_ * mixed_.solve_raw(z, Vector::Zero(mesh_->num_triangles())).mu);
  return r_adj + t_adj;
}

KappaResult kappa_h(const ProblemSpec& ps, double tolerance) {
  const KappaOperator op(ps);
  const EigenOptions opt{tolerance, 500, 0x5eed2024};
  auto apply = [&](const Vector& x) { return op.apply_gram(x); };
  EigenResult r;
  if (op.mean_zero()) {
    const Vector ones = Vector::Ones(ps.mesh->num_triangles());
    r = largest_gen_eig(apply, op.pw_mass(), opt, &ones);
  } else {
    r = largest_gen_eig(apply, op.pw_mass(), opt);
  }
  KappaResult out;
  out.lambda_max = std::max(0.0, r.value);
  out.kappa = std::sqrt(out.lambda_max) * (1.0 + 10.0 * tolerance);
  out.iterations = r.iterations;
  out.tolerance = tolerance;
  return out;
}

double c_of_h(double kappa, double c0h) { return std::sqrt(kappa * kappa + c0h * c0h); }

ConstantsBundle compute_constants(const ProblemSpec& ps, PoincareMode mode) {
  const Mesh& m = *ps.mesh;
  ConstantsBundle c;
  c.h = m.h();
  c.grid_h = m.cells_per_unit() > 0 ? 1.0 / m.cells_per_unit() : m.h();
  const ProjectionConstant pc = c0_of_mesh(m);
  c.c0 = pc.c0;
  c.c0h = pc.c0h;
  c.c0h_grid = pc.c0 * c.grid_h;
  c.cp = poincare_constant(ps, mode);
  c.cp_provenance = mode == PoincareMode::ExactUnitSquare ? "exact" : "CR-bound";
  const KappaResult k = kappa_h(ps);
  c.kappa_h = k.kappa;
  c.kappa_iterations = k.iterations;
  c.kappa_provenance = "eigeniteration";
  c.c_of_h = c_of_h(c.kappa_h, c.c0h);
  c.c_of_h_grid = c_of_h(c.kappa_h, c.c0h_grid);
  return c;
}

}  // namespace hypercircle
