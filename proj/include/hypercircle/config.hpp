#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypercircle/constants.hpp"
#include "hypercircle/weight.hpp"

namespace hypercircle {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class DomainKind { UnitSquare, LShape, Rectangle };
enum class BoundarySetup { FullDirichlet, Mixed };
enum class SourceKind { Sine, Zero };
enum class DirichletDataKind { Zero, Linear };
enum class PoincareChoice { Auto, Exact, CrBound };

/// Everything a run or sweep needs. See configs/README for the file grammar.
struct RunConfig {
  DomainKind domain = DomainKind::UnitSquare;
  Rect rect{0.0, 1.0, 0.0, 1.0};
  Rect region{0.375, 0.625, 0.375, 0.625};
  BoundarySetup boundary = BoundarySetup::FullDirichlet;
  std::vector<std::string> neumann_sides;  // left, right, bottom, top
  SourceKind source = SourceKind::Sine;
  DirichletDataKind dirichlet_data = DirichletDataKind::Zero;
  PoincareChoice poincare = PoincareChoice::Auto;
  GradNormConvention grad_norm = GradNormConvention::Euclidean;

  int n = 8;
  double eps = 0.3;
  std::vector<int> n_list{8, 16, 32};
  std::vector<int> extended_n_list{64, 128};
  int band_n = 64;
  std::vector<double> eps_list{0.2, 0.25, 0.3, 0.35, 0.375};

  std::filesystem::path output_dir = "out";

  /// Throws ConfigError on inconsistent settings.
  void validate() const;
};

RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::filesystem::path& path);

std::string to_string(DomainKind k);
std::string to_string(GradNormConvention c);
GradNormConvention parse_grad_norm_convention(const std::string& s);

}  // namespace hypercircle
