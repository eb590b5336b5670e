#include "hypercircle/fem_conforming.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "hypercircle/quadrature.hpp"

namespace hypercircle {

ProblemSpec ProblemSpec::dirichlet(MeshPtr mesh, ScalarFunction source) {
  ProblemSpec ps;
  ps.mesh = std::move(mesh);
  ps.source = std::move(source);
  ps.dirichlet_data = [](Point) { return 0.0; };
  ps.neumann_data = [](Point) { return 0.0; };
  return ps;
}

bool ProblemSpec::pure_neumann() const {
  for (BoundaryLabel l : mesh->boundary_labels()) {
    if (l == BoundaryLabel::Dirichlet) return false;
  }
  return true;
}

ProblemSpec ProblemSpec::homogeneous() const {
  ProblemSpec ps = *this;
  ps.dirichlet_data = [](Point) { return 0.0; };
  ps.neumann_data = [](Point) { return 0.0; };
  return ps;
}

void ProblemSpec::validate() const {
  if (!mesh) throw std::invalid_argument("problem has no mesh");
  if (!source) throw std::invalid_argument("problem has no source");
  if (!dirichlet_data) throw std::invalid_argument("problem has no Dirichlet data");
  if (!neumann_data) throw std::invalid_argument("problem has no Neumann data");
}

std::array<Vec2, 3> barycentric_gradients(const Triangle& K) {
  const double two_area = 2.0 * K.signed_area();
  std::array<Vec2, 3> g;
  for (int i = 0; i < 3; ++i) {
    const Point& pj = K.v[(i + 1) % 3];
    const Point& pk = K.v[(i + 2) % 3];
    g[i] = {(pj.y - pk.y) / two_area, (pk.x - pj.x) / two_area};
  }
  return g;
}

std::array<std::array<double, 3>, 3> p1_local_stiffness(const Triangle& K) {
  const auto g = barycentric_gradients(K);
  const double a = K.area();
  std::array<std::array<double, 3>, 3> s{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) s[i][j] = a * dot(g[i], g[j]);
  }
  return s;
}

Vec2 P1Field::gradient(int tri) const {
  const auto g = barycentric_gradients(mesh->triangle(tri));
  const auto& t = mesh->triangles()[tri];
  Vec2 out;
  for (int i = 0; i < 3; ++i) out += values(t[i]) * g[i];
  return out;
}

double P1Field::value(int tri, Point p) const {
  const auto& t = mesh->triangles()[tri];
  const Point v0 = mesh->vertices()[t[0]];
  return values(t[0]) + dot(gradient(tri), p - v0);
}

double P1Field::integral() const {
  double s = 0.0;
  for (int k = 0; k < mesh->num_triangles(); ++k) {
    const auto& t = mesh->triangles()[k];
    s += mesh->area(k) * (values(t[0]) + values(t[1]) + values(t[2])) / 3.0;
  }
  return s;
}

SparseMatrix p1_full_stiffness(const Mesh& m) {
  Triplets trip;
  trip.reserve(9 * m.num_triangles());
  for (int k = 0; k < m.num_triangles(); ++k) {
    const auto s = p1_local_stiffness(m.triangle(k));
    const auto& t = m.triangles()[k];
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) trip.emplace_back(t[i], t[j], s[i][j]);
    }
  }
  SparseMatrix a(m.num_vertices(), m.num_vertices());
  a.setFromTriplets(trip.begin(), trip.end());
  return a;
}

Vector p1_load(const Mesh& m, const ScalarFunction& f) {
  const QuadRule& rule = triangle_gauss_rule(6);
  Vector load = Vector::Zero(m.num_vertices());
  for (int k = 0; k < m.num_triangles(); ++k) {
    const Triangle K = m.triangle(k);
    const auto& t = m.triangles()[k];
    const double area = K.area();
    for (std::size_t q = 0; q < rule.weights.size(); ++q) {
      const auto& l = rule.points[q];
      const double fw = area * rule.weights[q] * f(K.from_barycentric(l));
      for (int i = 0; i < 3; ++i) load(t[i]) += fw * l[i];
    }
  }
  return load;
}

Vector p1_load_pw_constant(const Mesh& m, const Vector& fh) {
  Vector load = Vector::Zero(m.num_vertices());
  for (int k = 0; k < m.num_triangles(); ++k) {
    const double share = fh(k) * m.area(k) / 3.0;
    for (int v : m.triangles()[k]) load(v) += share;
  }
  return load;
}

Vector p1_neumann_load(const ProblemSpec& ps) {
  const Mesh& m = *ps.mesh;
  Vector load = Vector::Zero(m.num_vertices());
  for (std::size_t i = 0; i < m.boundary_edges().size(); ++i) {
    if (m.boundary_labels()[i] != BoundaryLabel::Neumann) continue;
    const int e = m.boundary_edges()[i];
    const double half = 0.5 * ps.neumann_data(m.edge_midpoint(e)) * m.edge_length(e);
    load(m.edges()[e][0]) += half;
    load(m.edges()[e][1]) += half;
  }
  return load;
}

std::vector<char> dirichlet_vertices(const Mesh& m) {
  std::vector<char> flag(m.num_vertices(), 0);
  for (std::size_t i = 0; i < m.boundary_edges().size(); ++i) {
    if (m.boundary_labels()[i] != BoundaryLabel::Dirichlet) continue;
    const auto& e = m.edges()[m.boundary_edges()[i]];
    flag[e[0]] = flag[e[1]] = 1;
  }
  return flag;
}

Vector dirichlet_vertex_values(const ProblemSpec& ps) {
  const Mesh& m = *ps.mesh;
  const auto flag = dirichlet_vertices(m);
  Vector g = Vector::Zero(m.num_vertices());
  for (int v = 0; v < m.num_vertices(); ++v) {
    if (flag[v]) g(v) = ps.dirichlet_data(m.vertices()[v]);
  }
  return g;
}

namespace {

struct ReducedP1 {
  SparseMatrix matrix;
  std::vector<int> dof;
  int num_free = 0;
  bool gauge = false;
};

ReducedP1 reduce_p1(const Mesh& m, const SparseMatrix& full) {
  ReducedP1 r;
  const auto fixed = dirichlet_vertices(m);
  r.dof.assign(m.num_vertices(), -1);
  for (int v = 0; v < m.num_vertices(); ++v) {
    if (!fixed[v]) r.dof[v] = r.num_free++;
  }
  if (r.num_free == 0) throw std::invalid_argument("no free vertices: every vertex is constrained");
  r.gauge = std::none_of(fixed.begin(), fixed.end(), [](char c) { return c != 0; });

  Triplets trip;
  trip.reserve(full.nonZeros() + 2 * m.num_vertices());
  for (int c = 0; c < full.outerSize(); ++c) {
    for (SparseMatrix::InnerIterator it(full, c); it; ++it) {
      const int i = r.dof[it.row()];
      const int j = r.dof[it.col()];
      if (i >= 0 && j >= 0) trip.emplace_back(i, j, it.value());
    }
  }
  const int n = r.num_free + (r.gauge ? 1 : 0);
  if (r.gauge) {
    // Mean-zero multiplier: sum_v (integral of phi_v) u_v = 0.
    const Vector mass = p1_load_pw_constant(m, Vector::Ones(m.num_triangles()));
    for (int v = 0; v < m.num_vertices(); ++v) {
      trip.emplace_back(r.dof[v], r.num_free, mass(v));
      trip.emplace_back(r.num_free, r.dof[v], mass(v));
    }
  }
  r.matrix.resize(n, n);
  r.matrix.setFromTriplets(trip.begin(), trip.end());
  return r;
}

}  // namespace

P1System assemble_p1(const ProblemSpec& ps, const ScalarFunction& rhs_source) {
  ps.validate();
  const Mesh& m = *ps.mesh;
  const SparseMatrix full = p1_full_stiffness(m);
  ReducedP1 r = reduce_p1(m, full);

  P1System sys;
  sys.lifting = dirichlet_vertex_values(ps);
  const Vector load = p1_load(m, rhs_source) + p1_neumann_load(ps) - full * sys.lifting;
  sys.rhs = Vector::Zero(r.matrix.rows());
  for (int v = 0; v < m.num_vertices(); ++v) {
    if (r.dof[v] >= 0) sys.rhs(r.dof[v]) = load(v);
  }
  sys.matrix = {std::move(r.matrix), r.gauge ? MatrixKind::SymmetricIndefinite : MatrixKind::Spd};
  sys.dof_of_vertex = std::move(r.dof);
  sys.gauge = r.gauge;
  return sys;
}

P1Solver::P1Solver(const ProblemSpec& ps) : mesh_(ps.mesh) {
  ps.validate();
  full_ = p1_full_stiffness(*mesh_);
  ReducedP1 r = reduce_p1(*mesh_, full_);
  dof_ = std::move(r.dof);
  num_free_ = r.num_free;
  num_unknowns_ = static_cast<int>(r.matrix.rows());
  gauge_ = r.gauge;
  if (gauge_) {
    saddle_.emplace(r.matrix);
  } else {
    spd_.emplace(r.matrix);
  }
}

P1Field P1Solver::solve(const Vector& load, const Vector& dirichlet_values) const {
  const Vector rhs_full = load - full_ * dirichlet_values;
  Vector rhs = Vector::Zero(num_unknowns_);
  for (std::size_t v = 0; v < dof_.size(); ++v) {
    if (dof_[v] >= 0) rhs(dof_[v]) = rhs_full(v);
  }
  const Vector x = gauge_ ? saddle_->solve(rhs) : spd_->solve(rhs);
  P1Field u{mesh_, dirichlet_values};
  for (std::size_t v = 0; v < dof_.size(); ++v) {
    if (dof_[v] >= 0) u.values(v) = x(dof_[v]);
  }
  return u;
}

P1Field P1Solver::solve(const Vector& load) const {
  return solve(load, Vector::Zero(mesh_->num_vertices()));
}

P1Field solve_p1(const ProblemSpec& ps, const ScalarFunction& rhs_source) {
  const P1Solver solver(ps);
  const Vector load = p1_load(*ps.mesh, rhs_source) + p1_neumann_load(ps);
  return solver.solve(load, dirichlet_vertex_values(ps));
}

double solve_cr_smallest_eig(const ProblemSpec& ps) {
  ps.validate();
  const Mesh& m = *ps.mesh;
  std::vector<int> dof(m.num_edges(), -1);
  int n = 0;
  for (int e = 0; e < m.num_edges(); ++e) {
    if (m.is_boundary_edge(e) && m.edge_label(e) == BoundaryLabel::Dirichlet) continue;
    dof[e] = n++;
  }
  if (n == 0) throw std::invalid_argument("no free Crouzeix-Raviart unknowns");

  // Basis of the edge opposite local vertex i is 1 - 2 lambda_i.
  Triplets a_trip;
  Triplets b_trip;
  for (int k = 0; k < m.num_triangles(); ++k) {
    const auto s = p1_local_stiffness(m.triangle(k));
    const auto& te = m.tri_edges()[k];
    for (int i = 0; i < 3; ++i) {
      const int di = dof[te[i].edge];
      if (di < 0) continue;
      b_trip.emplace_back(di, di, m.area(k) / 3.0);
      for (int j = 0; j < 3; ++j) {
        const int dj = dof[te[j].edge];
        if (dj >= 0) a_trip.emplace_back(di, dj, 4.0 * s[i][j]);
      }
    }
  }
  SparseMatrix a(n, n), b(n, n);
  a.setFromTriplets(a_trip.begin(), a_trip.end());
  b.setFromTriplets(b_trip.begin(), b_trip.end());

  const EigenOptions opt{1e-8, 500, 0x5eed2024};
  if (ps.pure_neumann()) {
    const Vector ones = Vector::Ones(n);
    return smallest_gen_eig(a, b, opt, &ones).value;
  }
  return smallest_gen_eig(a, b, opt).value;
}

void dump_field(const P1Field& u, std::ostream& os) {
  const auto old_precision = os.precision(17);
  for (Eigen::Index v = 0; v < u.values.size(); ++v) os << v << ' ' << u.values(v) << '\n';
  os.precision(old_precision);
}

}  // namespace hypercircle
