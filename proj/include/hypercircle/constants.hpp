#pragma once

#include <string>

#include "hypercircle/fem_mixed.hpp"

namespace hypercircle {

/// First positive root of the Bessel function J_1.
inline constexpr double kBesselJ11 = 3.8317059702075123;

struct ProjectionConstant {
  double c0 = 0.0;   // max_K C0(K) / h, C0(K) = h_K / j_{1,1}
  double c0h = 0.0;  // c0 * h
};

ProjectionConstant c0_of_mesh(const Mesh& m);

enum class PoincareMode { ExactUnitSquare, CrBound };

/// Lower bound on lambda_1 from a Crouzeix-Raviart eigenvalue lambda_h.
double cr_eigenvalue_lower_bound(double lambda_h, double h);

/// C_p = 1/sqrt(lambda_1). ExactUnitSquare gives 1/(sqrt(2) pi) and is only
/// accepted for the unit square with Gamma_D = boundary; CrBound returns a
/// guaranteed upper bound from the CR eigenvalue.
double poincare_constant(const ProblemSpec& ps, PoincareMode mode);

struct KappaResult {
  double lambda_max = 0.0;  // top eigenvalue of ||Q_h f||^2 / ||f||^2
  double kappa = 0.0;       // sqrt(lambda_max) inflated by the eigen tolerance
  int iterations = 0;
  double tolerance = 0.0;
};

/// Factorized operator f_h -> Q_h f_h = grad R_h f_h - T_h f_h on piecewise
/// constants, for the homogeneous version of `ps`.
class KappaOperator {
 public:
  explicit KappaOperator(const ProblemSpec& ps);

  /// Conforming part R_h f_h (nodal values) and mixed part T_h f_h (edge fluxes).
  std::pair<P1Field, RT0Field> apply_parts(const Vector& fh) const;
  /// G f_h, where f^T G f = ||Q_h f||^2.
  Vector apply_gram(const Vector& fh) const;
  /// Diagonal mass of X^h.
  const SparseMatrix& pw_mass() const { return pw_mass_; }
  bool mean_zero() const { return mean_zero_; }

 private:
  MeshPtr mesh_;
  P1Solver p1_;
  MixedSolver mixed_;
  SparseMatrix load_;      // vertices x triangles, (1_K, phi_v)
  SparseMatrix coupling_;  // vertices x edges, (grad phi_v, psi_e)
  SparseMatrix rt_mass_;
  SparseMatrix pw_mass_;
  bool mean_zero_ = false;
};

KappaResult kappa_h(const ProblemSpec& ps, double tolerance = 1e-6);

/// sqrt(kappa^2 + c0h^2).
double c_of_h(double kappa, double c0h);

/// Interpolation-based alternative valid only under H^2 regularity on
/// uniform right-isosceles meshes; for comparison.
inline double c_of_h_h2_regular(double h) { return 0.493 * h; }

struct ConstantsBundle {
  double h = 0.0;         // longest edge
  double grid_h = 0.0;    // 1/n on structured meshes
  double c0 = 0.0;
  double c0h = 0.0;
  double cp = 0.0;
  double kappa_h = 0.0;
  double c_of_h = 0.0;
  // Same quantities with h replaced by the grid parameter 1/n. Reported for
  // comparison with tables indexed by 1/n; never used in the bounds.
  double c0h_grid = 0.0;
  double c_of_h_grid = 0.0;
  int kappa_iterations = 0;
  std::string cp_provenance;
  std::string kappa_provenance;
};

ConstantsBundle compute_constants(const ProblemSpec& ps, PoincareMode mode);

}  // namespace hypercircle
