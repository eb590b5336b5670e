#include "hypercircle/fem_mixed.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "hypercircle/quadrature.hpp"

namespace hypercircle {

double PwConstField::integral() const {
  double s = 0.0;
  for (int k = 0; k < mesh->num_triangles(); ++k) s += mesh->area(k) * values(k);
  return s;
}

RT0Field::Coefficients RT0Field::coefficients(int tri) const {
  const Triangle K = mesh->triangle(tri);
  const double scale = 1.0 / (2.0 * mesh->area(tri));
  Coefficients co;
  for (int i = 0; i < 3; ++i) {
    const auto inc = mesh->tri_edges()[tri][i];
    const double w = inc.sign * flux(inc.edge) * scale;
    co.a -= w * K.v[i].x;
    co.b -= w * K.v[i].y;
    co.c += w;
  }
  return co;
}

Vec2 RT0Field::value(int tri, Point p) const {
  const Coefficients co = coefficients(tri);
  return {co.a + co.c * p.x, co.b + co.c * p.y};
}

double RT0Field::divergence(int tri) const {
  double out = 0.0;
  for (const auto& inc : mesh->tri_edges()[tri]) out += inc.sign * flux(inc.edge);
  return out / mesh->area(tri);
}

PwConstField project_pi_h(const ScalarFunction& f, MeshPtr mesh, bool mean_zero) {
  const QuadRule& rule = triangle_gauss_rule(6);
  PwConstField out{mesh, Vector(mesh->num_triangles()), mean_zero};
  for (int k = 0; k < mesh->num_triangles(); ++k) {
    const Triangle K = mesh->triangle(k);
    out.values(k) = integrate(f, K, rule) / K.area();
  }
  if (mean_zero) out.values.array() -= out.integral() / mesh->total_area();
  return out;
}

PwConstField divergence(const RT0Field& p) {
  PwConstField out{p.mesh, Vector(p.mesh->num_triangles()), false};
  for (int k = 0; k < p.mesh->num_triangles(); ++k) out.values(k) = p.divergence(k);
  return out;
}

std::array<std::array<double, 3>, 3> rt0_local_mass(const Triangle& K) {
  const QuadRule& rule = triangle_gauss_rule(2);
  const double area = K.area();
  const double scale = 1.0 / (4.0 * area * area);
  std::array<std::array<double, 3>, 3> m{};
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      m[i][j] = scale * integrate([&](Point x) { return dot(x - K.v[i], x - K.v[j]); }, K, rule);
      m[j][i] = m[i][j];
    }
  }
  return m;
}

SparseMatrix rt0_mass(const Mesh& m) {
  Triplets trip;
  trip.reserve(9 * m.num_triangles());
  for (int k = 0; k < m.num_triangles(); ++k) {
    const auto local = rt0_local_mass(m.triangle(k));
    const auto& te = m.tri_edges()[k];
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        trip.emplace_back(te[i].edge, te[j].edge, te[i].sign * te[j].sign * local[i][j]);
      }
    }
  }
  SparseMatrix out(m.num_edges(), m.num_edges());
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

MixedSolver::MixedSolver(const ProblemSpec& ps) : mesh_(ps.mesh) {
  ps.validate();
  const Mesh& m = *mesh_;
  const int nt = m.num_triangles();
  mass_ = rt0_mass(m);

  Triplets dt;
  dt.reserve(3 * nt);
  for (int k = 0; k < nt; ++k) {
    for (const auto& inc : m.tri_edges()[k]) dt.emplace_back(k, inc.edge, inc.sign);
  }
  div_.resize(nt, m.num_edges());
  div_.setFromTriplets(dt.begin(), dt.end());

  dof_.assign(m.num_edges(), -1);
  for (int e = 0; e < m.num_edges(); ++e) {
    if (m.is_boundary_edge(e) && m.edge_label(e) == BoundaryLabel::Neumann) continue;
    dof_[e] = num_free_++;
  }
  gauge_ = ps.pure_neumann();

  const int n = num_free_ + nt + (gauge_ ? 1 : 0);
  Triplets trip;
  trip.reserve(mass_.nonZeros() + 2 * dt.size() + 2 * nt);
  for (int c = 0; c < mass_.outerSize(); ++c) {
    for (SparseMatrix::InnerIterator it(mass_, c); it; ++it) {
      const int i = dof_[it.row()];
      const int j = dof_[it.col()];
      if (i >= 0 && j >= 0) trip.emplace_back(i, j, it.value());
    }
  }
  for (int c = 0; c < div_.outerSize(); ++c) {
    for (SparseMatrix::InnerIterator it(div_, c); it; ++it) {
      const int e = dof_[it.col()];
      if (e < 0) continue;
      const int k = num_free_ + static_cast<int>(it.row());
      trip.emplace_back(k, e, it.value());
      trip.emplace_back(e, k, it.value());
    }
  }
  if (gauge_) {
    for (int k = 0; k < nt; ++k) {
      trip.emplace_back(num_free_ + k, n - 1, m.area(k));
      trip.emplace_back(n - 1, num_free_ + k, m.area(k));
    }
  }
  SparseMatrix a(n, n);
  a.setFromTriplets(trip.begin(), trip.end());
  fact_.emplace(a);
}

MixedSolution MixedSolver::solve_raw(const Vector& flux_rhs, const Vector& tri_rhs) const {
  const int nt = mesh_->num_triangles();
  const int n = num_free_ + nt + (gauge_ ? 1 : 0);
  Vector rhs = Vector::Zero(n);
  for (std::size_t e = 0; e < dof_.size(); ++e) {
    if (dof_[e] >= 0) rhs(dof_[e]) = flux_rhs(e);
  }
  rhs.segment(num_free_, nt) = tri_rhs;
  const Vector x = fact_->solve(rhs);

  MixedSolution out{Vector::Zero(mesh_->num_edges()), x.segment(num_free_, nt)};
  for (std::size_t e = 0; e < dof_.size(); ++e) {
    if (dof_[e] >= 0) out.flux(e) = x(dof_[e]);
  }
  return out;
}

std::pair<RT0Field, PwConstField> MixedSolver::solve(const ProblemSpec& ps,
                                                     const PwConstField& f_h) const {
  const Mesh& m = *mesh_;
  const int nt = m.num_triangles();

  // Prescribed fluxes on Gamma_N: outward flux g_N |e|.
  Vector fixed = Vector::Zero(m.num_edges());
  Vector flux_rhs = Vector::Zero(m.num_edges());
  double boundary_flux = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < m.boundary_edges().size(); ++i) {
    const int e = m.boundary_edges()[i];
    const int k = m.edge_triangles()[e][0];
    int sign = 0;
    for (const auto& inc : m.tri_edges()[k]) {
      if (inc.edge == e) sign = inc.sign;
    }
    if (m.boundary_labels()[i] == BoundaryLabel::Neumann) {
      const double outward = ps.neumann_data(m.edge_midpoint(e)) * m.edge_length(e);
      fixed(e) = sign * outward;
      boundary_flux += outward;
      scale += std::abs(outward);
    } else {
      const auto& ev = m.edges()[e];
      flux_rhs(e) = sign * 0.5 * (ps.dirichlet_data(m.vertices()[ev[0]]) +
                                  ps.dirichlet_data(m.vertices()[ev[1]]));
    }
  }

  Vector tri_rhs(nt);
  for (int k = 0; k < nt; ++k) {
    tri_rhs(k) = -m.area(k) * f_h.values(k);
    scale += std::abs(tri_rhs(k));
  }
  if (gauge_) {
    const double mismatch = boundary_flux - tri_rhs.sum();
    if (std::abs(mismatch) > 1e-10 * std::max(1.0, scale)) {
      throw CompatibilityError("pure-Neumann data incompatible: integral of f_h plus boundary flux is " +
                               std::to_string(mismatch));
    }
  }
  flux_rhs -= mass_ * fixed;
  tri_rhs -= div_ * fixed;

  MixedSolution sol = solve_raw(flux_rhs, tri_rhs);
  sol.flux += fixed;
  return {RT0Field{mesh_, std::move(sol.flux)}, PwConstField{mesh_, std::move(sol.mu), gauge_}};
}

std::pair<RT0Field, PwConstField> solve_rt0(const ProblemSpec& ps, const PwConstField& f_h) {
  return MixedSolver(ps).solve(ps, f_h);
}

void dump_flux(const RT0Field& p, std::ostream& os) {
  const auto old_precision = os.precision(17);
  for (Eigen::Index e = 0; e < p.flux.size(); ++e) os << e << ' ' << p.flux(e) << '\n';
  os.precision(old_precision);
}

}  // namespace hypercircle
