#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "hypercircle/linalg.hpp"
#include "hypercircle/mesh.hpp"

namespace hypercircle {

using ScalarFunction = std::function<double(Point)>;
using VectorFunction = std::function<Vec2(Point)>;

/// Poisson problem -lap u = f with u = g_D on Gamma_D and du/dn = g_N on
/// Gamma_N. The partition comes from the mesh boundary labels. g_D is used
/// through its vertex values (piecewise linear), g_N through its value at
/// edge midpoints (piecewise constant).
struct ProblemSpec {
  MeshPtr mesh;
  ScalarFunction source;
  ScalarFunction dirichlet_data;
  ScalarFunction neumann_data;
  std::optional<VectorFunction> exact_grad;

  /// Full-Dirichlet problem with zero data.
  static ProblemSpec dirichlet(MeshPtr mesh, ScalarFunction source);

  /// True when no boundary edge is labeled Dirichlet.
  bool pure_neumann() const;
  /// Same mesh and partition with g_D = g_N = 0.
  ProblemSpec homogeneous() const;
  /// Throws std::invalid_argument on a missing mesh or missing data.
  void validate() const;
};

/// Continuous piecewise linear field, one value per mesh vertex.
struct P1Field {
  MeshPtr mesh;
  Vector values;

  Vec2 gradient(int tri) const;
  double value(int tri, Point p) const;
  /// Integral over the domain.
  double integral() const;
};

/// Gradients of the barycentric coordinates of K.
std::array<Vec2, 3> barycentric_gradients(const Triangle& K);

/// Element stiffness (grad phi_i, grad phi_j)_K.
std::array<std::array<double, 3>, 3> p1_local_stiffness(const Triangle& K);

/// Stiffness over all vertices, no boundary conditions applied.
SparseMatrix p1_full_stiffness(const Mesh& m);

/// (f, phi_v) for every vertex, degree-6 quadrature.
Vector p1_load(const Mesh& m, const ScalarFunction& f);

/// (f_h, phi_v) for a piecewise constant f_h.
Vector p1_load_pw_constant(const Mesh& m, const Vector& fh);

/// (g_N, phi_v)_{Gamma_N} for every vertex.
Vector p1_neumann_load(const ProblemSpec& ps);

/// Vertices that carry a Dirichlet condition.
std::vector<char> dirichlet_vertices(const Mesh& m);

struct P1System {
  SparseSym matrix;
  Vector rhs;
  /// Vertex -> unknown index, -1 for Dirichlet vertices. With the
  /// pure-Neumann gauge the last unknown is the mean-zero multiplier.
  std::vector<int> dof_of_vertex;
  /// Nodal values: g_D on Dirichlet vertices, zero elsewhere.
  Vector lifting;
  bool gauge = false;
};

/// Galerkin system for the free vertices: stiffness, volume load of
/// `rhs_source`, Neumann load and the Dirichlet lifting moved to the right.
P1System assemble_p1(const ProblemSpec& ps, const ScalarFunction& rhs_source);

/// Factorized P1 operator for repeated right-hand sides on one mesh and
/// boundary partition.
class P1Solver {
 public:
  explicit P1Solver(const ProblemSpec& ps);

  /// `load` holds (f, phi_v) + (g_N, phi_v) over all vertices;
  /// `dirichlet_values` the nodal values imposed on Dirichlet vertices.
  P1Field solve(const Vector& load, const Vector& dirichlet_values) const;
  /// Homogeneous Dirichlet values.
  P1Field solve(const Vector& load) const;

  const SparseMatrix& full_stiffness() const { return full_; }
  const std::vector<int>& dof_of_vertex() const { return dof_; }
  int num_unknowns() const { return num_unknowns_; }

 private:
  MeshPtr mesh_;
  SparseMatrix full_;
  std::vector<int> dof_;
  int num_free_ = 0;
  int num_unknowns_ = 0;
  bool gauge_ = false;
  std::optional<SpdFactorization> spd_;
  std::optional<SaddleFactorization> saddle_;
};

P1Field solve_p1(const ProblemSpec& ps, const ScalarFunction& rhs_source);

/// Vertex values of g_D (zero away from Gamma_D).
Vector dirichlet_vertex_values(const ProblemSpec& ps);

/// Smallest eigenvalue of the Crouzeix-Raviart Laplacian with the essential
/// conditions of ps (mean-zero gauge when pure Neumann).
double solve_cr_smallest_eig(const ProblemSpec& ps);

/// Writes "vertex_id value" lines.
void dump_field(const P1Field& u, std::ostream& os);

}  // namespace hypercircle
