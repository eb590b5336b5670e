#pragma once

#include <optional>
#include <stdexcept>

#include "hypercircle/constants.hpp"
#include "hypercircle/weight.hpp"

namespace hypercircle {

class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Equilibration residual above which no bound is certified.
inline constexpr double kEquilibrationTolerance = 1e-8;

struct EstimateReport {
  double h = 0.0;
  double grid_h = 0.0;
  double eps = 0.0;
  ConstantsBundle constants;
  double grad_sup = 0.0;
  double data_osc = 0.0;      // C0 h ||f - pi_h f||
  double source_osc = 0.0;    // ||f - pi_h f||
  double flux_gap = 0.0;      // ||grad u_h - p_h||
  double equilibration_residual = 0.0;
  double err1 = 0.0;
  double err2 = 0.0;
  double err3 = 0.0;
  double local_bound = 0.0;   // E_L bar
  double global_bound = 0.0;  // E_G bar
  std::optional<double> exact_local;   // ||grad(u - u_h)||_S
  std::optional<double> exact_global;  // ||grad(u - u_h)||_Omega
  double seconds_solve = 0.0;
  double seconds_constants = 0.0;
  double seconds_estimate = 0.0;
};

/// max_K |div p_h + pi_f|.
double equilibration_residual(const RT0Field& p_h, const PwConstField& pi_f);

/// ||f - pi_h f||_Omega, degree-6 quadrature.
double source_oscillation(const ScalarFunction& f, const PwConstField& pi_f);

/// ||grad u_h - p_h||_Omega.
double flux_gap(const P1Field& u_h, const RT0Field& p_h);

/// Field grad u_h - p_h, per triangle.
PiecewiseVectorField flux_gap_field(const P1Field& u_h, const RT0Field& p_h);

/// C0 h ||f - pi_h f|| + ||grad u_h - p_h||. Throws CertificateError when
/// p_h is not equilibrated against pi_f.
double global_bound(const P1Field& u_h, const RT0Field& p_h, const ScalarFunction& f,
                    const PwConstField& pi_f, const ConstantsBundle& c);

/// Local bound on ||grad(u - u_h)||_S for the region of `w`.
EstimateReport local_bound(const P1Field& u_h, const RT0Field& p_h, const ScalarFunction& f,
                           const PwConstField& pi_f, const WeightFunction& w,
                           const ConstantsBundle& c);

/// Fills err1..3 and the bounds from the scalar ingredients.
void compose_local_bound(EstimateReport& r, double flux_gap_alpha_sq);

/// ||grad u - grad u_h|| over `region` ∩ mesh, degree-6 quadrature on
/// clipped pieces.
double exact_local_error(const P1Field& u_h, const VectorFunction& exact_grad, const Rect& region);

/// ||grad u - grad u_h||_Omega.
double exact_global_error(const P1Field& u_h, const VectorFunction& exact_grad);

}  // namespace hypercircle
