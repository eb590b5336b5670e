#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hypercircle/config.hpp"
#include "hypercircle/pipeline.hpp"

using namespace hypercircle;

namespace {

RunConfig parse(const std::string& text) {
  std::istringstream is(text);
  return parse_config(is);
}

std::string mesh_csv(const RunConfig& cfg) {
  std::ostringstream os;
  write_mesh_table(os, sweep_mesh(cfg, false));
  return os.str();
}

}  // namespace

TEST_CASE("defaults") {
  const RunConfig c = parse("");
  CHECK(c.domain == DomainKind::UnitSquare);
  CHECK(c.eps == 0.3);
  CHECK(c.n_list == std::vector<int>{8, 16, 32});
  CHECK(c.extended_n_list == std::vector<int>{64, 128});
  CHECK(c.grad_norm == GradNormConvention::Euclidean);
  CHECK(c.region.x0 == 0.375);
}

TEST_CASE("full grammar") {
  const RunConfig c = parse(R"(# comment
; another comment
[problem]
domain = rect
rect = 0 2 0 1
region = 0.5 1.0 0.25 0.75
boundary = mixed
neumann_sides = left top
source = zero
dirichlet_data = linear
poincare = cr_bound
grad_norm_convention = axis

[run]
n = 4
eps = 0.2

[sweep_mesh]
n_list = 2 4
extended_n_list =

[sweep_band]
n = 8
eps_list = 0.1 0.2

[output]
dir = somewhere
)");
  CHECK(c.domain == DomainKind::Rectangle);
  CHECK(c.rect.x1 == 2.0);
  CHECK(c.boundary == BoundarySetup::Mixed);
  CHECK(c.neumann_sides == std::vector<std::string>{"left", "top"});
  CHECK(c.source == SourceKind::Zero);
  CHECK(c.dirichlet_data == DirichletDataKind::Linear);
  CHECK(c.poincare == PoincareChoice::CrBound);
  CHECK(c.grad_norm == GradNormConvention::Axis);
  CHECK(c.n == 4);
  CHECK(c.eps == 0.2);
  CHECK(c.n_list == std::vector<int>{2, 4});
  CHECK(c.extended_n_list.empty());
  CHECK(c.band_n == 8);
  CHECK(c.eps_list == std::vector<double>{0.1, 0.2});
  CHECK(c.output_dir == "somewhere");
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse("[problem]\ndomain = torus\n"), ConfigError);
  CHECK_THROWS_AS(parse("[run]\nn = eight\n"), ConfigError);
  CHECK_THROWS_AS(parse("[run]\neps = 0.3x\n"), ConfigError);
  CHECK_THROWS_AS(parse("[sweep_mesh]\nn_list = 16 8\n"), ConfigError);
  CHECK_THROWS_AS(parse("[problem]\nregion = 0.1 0.2 0.3\n"), ConfigError);
  CHECK_THROWS_AS(parse("[problem]\nregion = 0.5 1.5 0.2 0.4\n"), ConfigError);
  CHECK_THROWS_AS(parse("[problem]\ndomain = l_shape\nregion = 0.6 0.9 0.6 0.9\n"), ConfigError);
  CHECK_THROWS_AS(parse("[problem]\nboundary = mixed\n"), ConfigError);
  CHECK_THROWS_AS(parse("[problem]\nboundary = mixed\nneumann_sides = front\n"), ConfigError);
  CHECK_THROWS_AS(parse("[problem]\nboundary = mixed\nneumann_sides = left right bottom top\n"), ConfigError);
  CHECK_THROWS_AS(parse("[problem\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/cfg.ini"), ConfigError);
  CHECK_THROWS_AS(parse_grad_norm_convention("manhattan"), ConfigError);
}

TEST_CASE("linear data gives a vanishing bound") {
  RunConfig c = parse("[problem]\nsource = zero\ndirichlet_data = linear\n");
  const EstimateReport r = run_case(c, 8, 0.3);
  CHECK(r.local_bound <= 1e-8);
  CHECK(r.global_bound <= 1e-8);
  REQUIRE(r.exact_local.has_value());
  CHECK(*r.exact_local <= 1e-10);
}

TEST_CASE("square run row") {
  const EstimateReport r = run_case(RunConfig{}, 8, 0.3);
  CHECK(std::abs(r.constants.kappa_h - 0.057) <= 0.002);
  CHECK(r.constants.cp_provenance == "exact");
}

TEST_CASE("mixed boundary run") {
  RunConfig c = parse("[problem]\nboundary = mixed\nneumann_sides = bottom\nregion = 0.25 0.5 0 0.25\n");
  const EstimateReport r = run_case(c, 8, 0.25);
  REQUIRE(r.exact_local.has_value());
  CHECK(r.local_bound >= *r.exact_local);
  CHECK(r.constants.cp_provenance == "CR-bound");
}

TEST_CASE("mesh sweep") {
  RunConfig c;
  c.n_list = {4, 8, 16};
  const auto rows = sweep_mesh(c, false);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) REQUIRE(r.report.has_value());
  CHECK(rows[1].report->local_bound < rows[0].report->local_bound);
  CHECK(rows[2].report->local_bound < rows[1].report->local_bound);
  for (const auto& r : rows) {
    const auto& e = *r.report;
    CHECK(std::abs(e.local_bound - (e.data_osc + std::sqrt(e.err1 * e.err1 + e.err2 * e.err2 + e.err3 * e.err3))) <=
          1e-14);
  }
}

TEST_CASE("empty n list") {
  RunConfig c = parse("[sweep_mesh]\nn_list =\n");
  CHECK(c.n_list.empty());
  CHECK(sweep_mesh(c, false).empty());
  CHECK(mesh_csv(c) == "n,h,kappa_h,C_h,E_L_bound,Err1,Err2,Err3,E_L,E_G_bound,status\n");
}

TEST_CASE("csv is byte stable") {
  RunConfig c;
  c.n_list = {4, 8};
  const std::string a = mesh_csv(c);
  CHECK(a == mesh_csv(c));
  CHECK(a.find(',') != std::string::npos);
  CHECK(a.find("nan") == std::string::npos);
}

TEST_CASE("band sweep") {
  RunConfig c;
  c.band_n = 8;
  c.eps_list = {0.3};
  const auto rows = sweep_bandwidth(c);
  REQUIRE(rows.size() == 1);
  REQUIRE(rows[0].report.has_value());
  const EstimateReport single = run_case(c, 8, 0.3);
  CHECK(rows[0].report->local_bound == single.local_bound);
  CHECK(rows[0].report->err3 == single.err3);

  std::ostringstream dat;
  write_band_dat(dat, rows);
  CHECK(dat.str().find("0.3 ") != std::string::npos);
}

TEST_CASE("report file") {
  RunConfig c;
  c.n_list = {4};
  std::ostringstream os;
  write_report(os, c, sweep_mesh(c, false));
  const std::string s = os.str();
  CHECK(s.find("kappa_h = ") != std::string::npos);
  CHECK(s.find("local_bound = ") != std::string::npos);
}

TEST_CASE("number format") {
  CHECK(format_number(0.05716) == "0.05716");
  CHECK(format_number(1.0 / 3.0) == "0.333333");
  CHECK(format_number(1e-12) == "1e-12");
}

TEST_CASE("mesh for configured domains") {
  RunConfig c = parse("[problem]\ndomain = l_shape\n");
  CHECK(make_mesh(c, 8)->num_triangles() == 96);
  CHECK_THROWS(make_mesh(c, 7));
  RunConfig m = parse("[problem]\nboundary = mixed\nneumann_sides = left\n");
  const MeshPtr mesh = make_mesh(m, 4);
  int neumann = 0;
  for (auto l : mesh->boundary_labels()) neumann += l == BoundaryLabel::Neumann;
  CHECK(neumann == 4);
}
