#include "hypercircle/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <thread>

namespace hypercircle {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool exact_solution_known(const RunConfig& cfg) {
  if (cfg.source == SourceKind::Zero && cfg.dirichlet_data == DirichletDataKind::Linear) return true;
  return cfg.source == SourceKind::Sine && cfg.dirichlet_data == DirichletDataKind::Zero &&
         cfg.domain == DomainKind::UnitSquare;
}

// Runs body(i) for i in [0, count) on up to hardware_concurrency threads.
template <class Body>
void parallel_for(std::size_t count, Body&& body) {
  const std::size_t workers =
      std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

MeshPtr make_mesh(const RunConfig& cfg, int n) {
  Mesh m = [&] {
    switch (cfg.domain) {
      case DomainKind::LShape: return build_uniform_lshape_mesh(n);
      case DomainKind::Rectangle: return build_uniform_rect_mesh(cfg.rect, n);
      case DomainKind::UnitSquare: break;
    }
    return build_uniform_rect_mesh({0.0, 1.0, 0.0, 1.0}, n);
  }();
  if (cfg.boundary == BoundarySetup::Mixed) {
    const Rect box = m.domain().bounding_box();
    const auto sides = cfg.neumann_sides;
    m = m.with_boundary_labels([box, sides](Point p) {
      constexpr double tol = 1e-12;
      for (const auto& s : sides) {
        if ((s == "left" && std::abs(p.x - box.x0) < tol) || (s == "right" && std::abs(p.x - box.x1) < tol) ||
            (s == "bottom" && std::abs(p.y - box.y0) < tol) || (s == "top" && std::abs(p.y - box.y1) < tol)) {
          return BoundaryLabel::Neumann;
        }
      }
      return BoundaryLabel::Dirichlet;
    });
  }
  return std::make_shared<const Mesh>(std::move(m));
}

ProblemSpec make_problem(const RunConfig& cfg, MeshPtr mesh) {
  constexpr double pi = std::numbers::pi;
  ProblemSpec ps;
  ps.mesh = std::move(mesh);
  if (cfg.source == SourceKind::Sine) {
    ps.source = [](Point p) { return 2.0 * pi * pi * std::sin(pi * p.x) * std::sin(pi * p.y); };
  } else {
    ps.source = [](Point) { return 0.0; };
  }

  std::optional<VectorFunction> grad;
  if (cfg.dirichlet_data == DirichletDataKind::Linear) {
    ps.dirichlet_data = [](Point p) { return p.x + p.y; };
    grad = [](Point) { return Vec2{1.0, 1.0}; };
  } else {
    ps.dirichlet_data = [](Point) { return 0.0; };
    if (cfg.source == SourceKind::Sine) {
      grad = [](Point p) {
        return Vec2{pi * std::cos(pi * p.x) * std::sin(pi * p.y), pi * std::sin(pi * p.x) * std::cos(pi * p.y)};
      };
    }
  }

  // g_N is the normal derivative of the exact solution where one is known.
  const Rect box = ps.mesh->domain().bounding_box();
  if (grad && exact_solution_known(cfg)) {
    const VectorFunction g = *grad;
    ps.neumann_data = [g, box](Point p) {
      constexpr double tol = 1e-12;
      Vec2 n{0.0, 0.0};
      if (std::abs(p.x - box.x0) < tol) n = {-1.0, 0.0};
      else if (std::abs(p.x - box.x1) < tol) n = {1.0, 0.0};
      else if (std::abs(p.y - box.y0) < tol) n = {0.0, -1.0};
      else if (std::abs(p.y - box.y1) < tol) n = {0.0, 1.0};
      return dot(g(p), n);
    };
    ps.exact_grad = grad;
  } else {
    ps.neumann_data = [](Point) { return 0.0; };
  }
  return ps;
}

PreparedCase prepare_case(const RunConfig& cfg, int n) {
  const auto t0 = Clock::now();
  MeshPtr mesh = make_mesh(cfg, n);
  ProblemSpec ps = make_problem(cfg, mesh);

  P1Field u_h = solve_p1(ps, ps.source);
  PwConstField pi_f = project_pi_h(ps.source, mesh, ps.pure_neumann());
  auto [p_h, mu] = solve_rt0(ps, pi_f);
  const double solve_time = seconds_since(t0);

  const auto t1 = Clock::now();
  PoincareMode mode = PoincareMode::CrBound;
  if (cfg.poincare == PoincareChoice::Exact) {
    mode = PoincareMode::ExactUnitSquare;
  } else if (cfg.poincare == PoincareChoice::Auto && cfg.domain == DomainKind::UnitSquare &&
             cfg.boundary == BoundarySetup::FullDirichlet) {
    mode = PoincareMode::ExactUnitSquare;
  }
  ConstantsBundle constants = compute_constants(ps, mode);
  const double constants_time = seconds_since(t1);

  PreparedCase pc{std::move(ps), std::move(u_h), std::move(pi_f), std::move(p_h), std::move(constants), 0.0, 0.0, 0.0, std::nullopt, 0.0, 0.0};
  pc.source_osc = source_oscillation(pc.problem.source, pc.pi_f);
  pc.flux_gap = flux_gap(pc.u_h, pc.p_h);
  pc.equilibration_residual = equilibration_residual(pc.p_h, pc.pi_f);
  if (pc.problem.exact_grad) pc.exact_global = exact_global_error(pc.u_h, *pc.problem.exact_grad);
  pc.seconds_solve = solve_time;
  pc.seconds_constants = constants_time;
  return pc;
}

EstimateReport estimate_case(const PreparedCase& pc, const RunConfig& cfg, double eps) {
  const auto t0 = Clock::now();
  const WeightFunction w =
      build_product_weight(cfg.region, eps, pc.problem.mesh->domain(), cfg.grad_norm);
  EstimateReport r = local_bound(pc.u_h, pc.p_h, pc.problem.source, pc.pi_f, w, pc.constants);
  if (pc.problem.exact_grad) {
    r.exact_local = exact_local_error(pc.u_h, *pc.problem.exact_grad, cfg.region);
    r.exact_global = pc.exact_global;
  }
  r.seconds_solve = pc.seconds_solve;
  r.seconds_constants = pc.seconds_constants;
  r.seconds_estimate = seconds_since(t0);
  return r;
}

EstimateReport run_case(const RunConfig& cfg, int n, double eps) {
  return estimate_case(prepare_case(cfg, n), cfg, eps);
}

std::vector<SweepRow> sweep_mesh(const RunConfig& cfg, bool extended) {
  std::vector<int> ns = cfg.n_list;
  if (extended) ns.insert(ns.end(), cfg.extended_n_list.begin(), cfg.extended_n_list.end());
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

  std::vector<SweepRow> rows(ns.size());
  parallel_for(ns.size(), [&](std::size_t i) {
    rows[i].n = ns[i];
    rows[i].eps = cfg.eps;
    try {
      rows[i].report = run_case(cfg, ns[i], cfg.eps);
    } catch (const std::exception& e) {
      rows[i].error = e.what();
    }
  });
  return rows;
}

std::vector<SweepRow> sweep_bandwidth(const RunConfig& cfg) {
  std::vector<SweepRow> rows(cfg.eps_list.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].n = cfg.band_n;
    rows[i].eps = cfg.eps_list[i];
  }
  if (rows.empty()) return rows;
  std::optional<PreparedCase> pc;
  try {
    pc = prepare_case(cfg, cfg.band_n);
  } catch (const std::exception& e) {
    for (auto& r : rows) r.error = e.what();
    return rows;
  }
  parallel_for(rows.size(), [&](std::size_t i) {
    try {
      rows[i].report = estimate_case(*pc, cfg, rows[i].eps);
    } catch (const std::exception& e) {
      rows[i].error = e.what();
    }
  });
  return rows;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

namespace {

std::string status_of(const SweepRow& row) {
  if (row.report) return "ok";
  std::string msg = row.error;
  std::replace(msg.begin(), msg.end(), ',', ';');
  std::replace(msg.begin(), msg.end(), '\n', ' ');
  return "error: " + msg;
}

}  // namespace

void write_mesh_table(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "n,h,kappa_h,C_h,E_L_bound,Err1,Err2,Err3,E_L,E_G_bound,status\n";
  for (const auto& row : rows) {
    os << row.n;
    if (row.report) {
      const auto& r = *row.report;
      os << ',' << format_number(r.h) << ',' << format_number(r.constants.kappa_h) << ','
         << format_number(r.constants.c_of_h) << ',' << format_number(r.local_bound) << ','
         << format_number(r.err1) << ',' << format_number(r.err2) << ',' << format_number(r.err3) << ','
         << (r.exact_local ? format_number(*r.exact_local) : std::string()) << ','
         << format_number(r.global_bound);
    } else {
      os << ",,,,,,,,,";
    }
    os << ',' << status_of(row) << '\n';
  }
}

void write_band_table(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "eps,Err1,Err2,Err3,E_L_bound,status\n";
  for (const auto& row : rows) {
    os << format_number(row.eps);
    if (row.report) {
      const auto& r = *row.report;
      os << ',' << format_number(r.err1) << ',' << format_number(r.err2) << ',' << format_number(r.err3)
         << ',' << format_number(r.local_bound);
    } else {
      os << ",,,,";
    }
    os << ',' << status_of(row) << '\n';
  }
}

void write_band_dat(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "# eps E_L_bound\n";
  for (const auto& row : rows) {
    if (row.report) os << format_number(row.eps) << ' ' << format_number(row.report->local_bound) << '\n';
  }
}

void write_report(std::ostream& os, const RunConfig& cfg, const std::vector<SweepRow>& rows) {
  for (const auto& row : rows) {
    os << "[case]\n";
    os << "domain = " << to_string(cfg.domain) << '\n';
    os << "n = " << row.n << '\n';
    os << "eps = " << format_number(row.eps) << '\n';
    if (!row.report) {
      os << "status = " << status_of(row) << "\n\n";
      continue;
    }
    const auto& r = *row.report;
    const auto& c = r.constants;
    auto kv = [&os](const char* key, double v) { os << key << " = " << format_number(v) << '\n'; };
    kv("h", r.h);
    kv("grid_h", r.grid_h);
    kv("c0", c.c0);
    kv("c0h", c.c0h);
    kv("c0h_grid", c.c0h_grid);
    kv("cp", c.cp);
    os << "cp_provenance = " << c.cp_provenance << '\n';
    kv("kappa_h", c.kappa_h);
    os << "kappa_provenance = " << c.kappa_provenance << '\n';
    os << "kappa_iterations = " << c.kappa_iterations << '\n';
    kv("c_of_h", c.c_of_h);
    kv("c_of_h_grid", c.c_of_h_grid);
    os << "grad_norm_convention = " << to_string(cfg.grad_norm) << '\n';
    kv("grad_sup", r.grad_sup);
    kv("source_osc", r.source_osc);
    kv("data_osc", r.data_osc);
    kv("flux_gap", r.flux_gap);
    kv("equilibration_residual", r.equilibration_residual);
    kv("err1", r.err1);
    kv("err2", r.err2);
    kv("err3", r.err3);
    kv("local_bound", r.local_bound);
    kv("global_bound", r.global_bound);
    if (r.exact_local) kv("exact_local", *r.exact_local);
    if (r.exact_global) kv("exact_global", *r.exact_global);
    kv("seconds_solve", r.seconds_solve);
    kv("seconds_constants", r.seconds_constants);
    kv("seconds_estimate", r.seconds_estimate);
    os << "status = ok\n\n";
  }
}

}  // namespace hypercircle
