#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "hypercircle/pipeline.hpp"

namespace fs = std::filesystem;
using namespace hypercircle;

namespace {

struct Options {
  std::string config;
  std::string out;
  std::string grad_norm;
  bool extended = false;
  int n = 0;
  double eps = 0.0;
};

RunConfig resolve(const Options& o) {
  RunConfig cfg = o.config.empty() ? RunConfig{} : load_config(o.config);
  if (!o.out.empty()) cfg.output_dir = o.out;
  if (!o.grad_norm.empty()) cfg.grad_norm = parse_grad_norm_convention(o.grad_norm);
  if (o.n > 0) cfg.n = o.n;
  if (o.eps > 0.0) cfg.eps = o.eps;
  cfg.validate();
  fs::create_directories(cfg.output_dir);
  return cfg;
}

std::ofstream open_output(const RunConfig& cfg, const char* name) {
  std::ofstream os(cfg.output_dir / name);
  if (!os) throw std::runtime_error("cannot write " + (cfg.output_dir / name).string());
  return os;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "Configuration file (INI style)")->check(CLI::ExistingFile);
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_option("--grad-norm-convention", o.grad_norm, "euclidean | axis")
      ->check(CLI::IsMember({"euclidean", "axis"}));
}

bool any_failed(const std::vector<SweepRow>& rows) {
  for (const auto& r : rows) {
    if (!r.report) {
      std::cerr << "n=" << r.n << " eps=" << r.eps << ": " << r.error << '\n';
      return true;
    }
  }
  return false;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Guaranteed local a posteriori error bounds for 2D Poisson problems"};
  app.require_subcommand(1);
  Options o;

  auto* run = app.add_subcommand("run", "Single case: report.txt and table.csv");
  add_common(run, o);
  run->add_option("--n", o.n, "Cells per unit length (overrides [run] n)");
  run->add_option("--eps", o.eps, "Band width (overrides [run] eps)");

  auto* sweep_mesh_cmd = app.add_subcommand("sweep-mesh", "Mesh refinement table");
  add_common(sweep_mesh_cmd, o);
  sweep_mesh_cmd->add_flag("--extended", o.extended, "Append the extended n list");

  auto* sweep_band_cmd = app.add_subcommand("sweep-band", "Band width sweep at fixed n");
  add_common(sweep_band_cmd, o);

  auto* dump = app.add_subcommand("dump-mesh", "Write mesh.txt for the configured domain");
  add_common(dump, o);
  dump->add_option("--n", o.n, "Cells per unit length");

  CLI11_PARSE(app, argc, argv);

  try {
    const RunConfig cfg = resolve(o);
    if (run->parsed()) {
      std::vector<SweepRow> rows(1);
      rows[0].n = cfg.n;
      rows[0].eps = cfg.eps;
      try {
        rows[0].report = run_case(cfg, cfg.n, cfg.eps);
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
      }
      auto rep = open_output(cfg, "report.txt");
      write_report(rep, cfg, rows);
      auto csv = open_output(cfg, "table.csv");
      write_mesh_table(csv, rows);
      write_mesh_table(std::cout, rows);
      return 0;
    }
    if (sweep_mesh_cmd->parsed()) {
      const auto rows = sweep_mesh(cfg, o.extended);
      auto rep = open_output(cfg, "report.txt");
      write_report(rep, cfg, rows);
      auto csv = open_output(cfg, "table.csv");
      write_mesh_table(csv, rows);
      write_mesh_table(std::cout, rows);
      return any_failed(rows) ? 1 : 0;
    }
    if (sweep_band_cmd->parsed()) {
      const auto rows = sweep_bandwidth(cfg);
      auto rep = open_output(cfg, "report.txt");
      write_report(rep, cfg, rows);
      auto csv = open_output(cfg, "table.csv");
      write_band_table(csv, rows);
      auto dat = open_output(cfg, "band.dat");
      write_band_dat(dat, rows);
      write_band_table(std::cout, rows);
      return any_failed(rows) ? 1 : 0;
    }
    if (dump->parsed()) {
      const MeshPtr mesh = make_mesh(cfg, cfg.n);
      auto os = open_output(cfg, "mesh.txt");
      mesh->dump(os);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
