#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <utility>

#include "hypercircle/fem_conforming.hpp"

namespace hypercircle {

/// One value per triangle. With `mean_zero`, sum_K |K| value_K = 0.
struct PwConstField {
  MeshPtr mesh;
  Vector values;
  bool mean_zero = false;

  double integral() const;
};

/// Lowest-order Raviart-Thomas field. `flux(e)` is the total flux across
/// edge e in its global orientation; on triangle K the field reads
/// (a_K + c_K x, b_K + c_K y).
struct RT0Field {
  MeshPtr mesh;
  Vector flux;

  struct Coefficients {
    double a = 0.0, b = 0.0, c = 0.0;
  };
  Coefficients coefficients(int tri) const;
  Vec2 value(int tri, Point p) const;
  /// Constant divergence 2 c_K on triangle tri.
  double divergence(int tri) const;
};

class CompatibilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Elementwise L2 projection onto piecewise constants (degree-6 means).
PwConstField project_pi_h(const ScalarFunction& f, MeshPtr mesh, bool mean_zero);

PwConstField divergence(const RT0Field& p);

/// Element mass matrix of the three RT0 basis functions of K, in local edge
/// order, for unit outward fluxes.
std::array<std::array<double, 3>, 3> rt0_local_mass(const Triangle& K);

/// Global RT0 mass over all edges, global orientation.
SparseMatrix rt0_mass(const Mesh& m);

struct MixedSolution {
  Vector flux;  // all edges
  Vector mu;    // per triangle
};

/// Factorized saddle-point operator
///   (p,q) + (div q, mu) + (div p, eta) = rhs
/// on the RT0 x P0 pair with Neumann flux unknowns eliminated. A mean-zero
/// multiplier is appended when Gamma_D is empty.
class MixedSolver {
 public:
  explicit MixedSolver(const ProblemSpec& ps);

  /// Mixed solve with source f_h and the boundary data of the problem spec.
  /// The returned flux satisfies div p + f_h = 0 elementwise and
  /// p.n = g_N on Gamma_N.
  std::pair<RT0Field, PwConstField> solve(const ProblemSpec& ps, const PwConstField& f_h) const;

  /// Raw solve with zero Neumann fluxes: `flux_rhs` over all edges (entries
  /// on Neumann edges are ignored), `tri_rhs` over triangles.
  MixedSolution solve_raw(const Vector& flux_rhs, const Vector& tri_rhs) const;

  bool gauge() const { return gauge_; }

 private:
  MeshPtr mesh_;
  SparseMatrix mass_;     // edges x edges
  SparseMatrix div_;      // triangles x edges, (div psi_e, 1_K)
  std::vector<int> dof_;  // edge -> unknown, -1 on Neumann edges
  int num_free_ = 0;
  bool gauge_ = false;
  std::optional<SaddleFactorization> fact_;
};

std::pair<RT0Field, PwConstField> solve_rt0(const ProblemSpec& ps, const PwConstField& f_h);

/// Writes "edge_id flux" lines.
void dump_flux(const RT0Field& p, std::ostream& os);

}  // namespace hypercircle
