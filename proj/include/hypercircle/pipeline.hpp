#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hypercircle/config.hpp"
#include "hypercircle/estimator.hpp"

namespace hypercircle {

/// Mesh for the configured domain with boundary labels applied.
MeshPtr make_mesh(const RunConfig& cfg, int n);

/// Problem data for the configured source and boundary setup. The exact
/// gradient is attached when the exact solution is known.
ProblemSpec make_problem(const RunConfig& cfg, MeshPtr mesh);

/// Everything that does not depend on the band width.
struct PreparedCase {
  ProblemSpec problem;
  P1Field u_h;
  PwConstField pi_f;
  RT0Field p_h;
  ConstantsBundle constants;
  double source_osc = 0.0;
  double flux_gap = 0.0;
  double equilibration_residual = 0.0;
  std::optional<double> exact_global;
  double seconds_solve = 0.0;
  double seconds_constants = 0.0;
};

PreparedCase prepare_case(const RunConfig& cfg, int n);

EstimateReport estimate_case(const PreparedCase& pc, const RunConfig& cfg, double eps);

/// mesh -> P1 -> pi_h -> RT0 -> constants -> weight -> estimator.
EstimateReport run_case(const RunConfig& cfg, int n, double eps);

struct SweepRow {
  int n = 0;
  double eps = 0.0;
  std::optional<EstimateReport> report;
  std::string error;
};

/// One case per n (cfg.n_list, plus cfg.extended_n_list when `extended`),
/// all at cfg.eps. Failures are recorded per row.
std::vector<SweepRow> sweep_mesh(const RunConfig& cfg, bool extended);

/// One estimate per cfg.eps_list entry at n = cfg.band_n; the solves and
/// constants are shared.
std::vector<SweepRow> sweep_bandwidth(const RunConfig& cfg);

/// Columns n,h,kappa_h,C_h,E_L_bound,Err1,Err2,Err3,E_L,E_G_bound,status.
void write_mesh_table(std::ostream& os, const std::vector<SweepRow>& rows);
/// Columns eps,Err1,Err2,Err3,E_L_bound,status.
void write_band_table(std::ostream& os, const std::vector<SweepRow>& rows);
/// Two columns: eps and E_L_bound.
void write_band_dat(std::ostream& os, const std::vector<SweepRow>& rows);
/// Key-value records, one block per row.
void write_report(std::ostream& os, const RunConfig& cfg, const std::vector<SweepRow>& rows);

/// Six significant digits, '.' decimal separator.
std::string format_number(double v);

}  // namespace hypercircle
