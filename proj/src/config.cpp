#include "hypercircle/config.hpp"

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fstream>
#include <sstream>

namespace hypercircle {

namespace pt = boost::property_tree;

namespace {

template <class T>
std::vector<T> parse_list(const std::string& text, const std::string& key) {
  std::istringstream is(text);
  std::vector<T> out;
  T v;
  while (is >> v) out.push_back(v);
  if (!is.eof()) throw ConfigError("cannot parse list for '" + key + "': " + text);
  return out;
}

Rect parse_rect(const std::string& text, const std::string& key) {
  const auto v = parse_list<double>(text, key);
  if (v.size() != 4) throw ConfigError("'" + key + "' needs four numbers: x0 x1 y0 y1");
  return {v[0], v[1], v[2], v[3]};
}

template <class E>
E pick(const std::string& value, const std::string& key,
       std::initializer_list<std::pair<const char*, E>> options) {
  for (const auto& [name, e] : options) {
    if (value == name) return e;
  }
  std::string names;
  for (const auto& o : options) names += std::string(names.empty() ? "" : "|") + o.first;
  throw ConfigError("bad value '" + value + "' for '" + key + "', expected " + names);
}

template <class T>
T get_number(const pt::ptree& tree, const std::string& key, T fallback) {
  const auto v = tree.get_optional<std::string>(key);
  if (!v) return fallback;
  std::istringstream is(*v);
  T out;
  if (!(is >> out) || !(is >> std::ws).eof()) throw ConfigError("'" + key + "' is not a number: " + *v);
  return out;
}

}  // namespace

GradNormConvention parse_grad_norm_convention(const std::string& s) {
  return pick<GradNormConvention>(s, "grad_norm_convention",
                                  {{"euclidean", GradNormConvention::Euclidean},
                                   {"axis", GradNormConvention::Axis}});
}

std::string to_string(GradNormConvention c) {
  return c == GradNormConvention::Euclidean ? "euclidean" : "axis";
}

std::string to_string(DomainKind k) {
  switch (k) {
    case DomainKind::UnitSquare: return "unit_square";
    case DomainKind::LShape: return "l_shape";
    case DomainKind::Rectangle: return "rect";
  }
  return "?";
}

RunConfig parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax error: ") + e.what());
  }

  RunConfig c;
  if (auto v = tree.get_optional<std::string>("problem.domain")) {
    c.domain = pick<DomainKind>(*v, "domain",
                                {{"unit_square", DomainKind::UnitSquare},
                                 {"l_shape", DomainKind::LShape},
                                 {"rect", DomainKind::Rectangle}});
  }
  if (auto v = tree.get_optional<std::string>("problem.rect")) c.rect = parse_rect(*v, "rect");
  if (auto v = tree.get_optional<std::string>("problem.region")) c.region = parse_rect(*v, "region");
  if (auto v = tree.get_optional<std::string>("problem.boundary")) {
    c.boundary = pick<BoundarySetup>(*v, "boundary",
                                     {{"dirichlet", BoundarySetup::FullDirichlet},
                                      {"mixed", BoundarySetup::Mixed}});
  }
  if (auto v = tree.get_optional<std::string>("problem.neumann_sides")) {
    c.neumann_sides = parse_list<std::string>(*v, "neumann_sides");
  }
  if (auto v = tree.get_optional<std::string>("problem.source")) {
    c.source = pick<SourceKind>(*v, "source", {{"sine", SourceKind::Sine}, {"zero", SourceKind::Zero}});
  }
  if (auto v = tree.get_optional<std::string>("problem.dirichlet_data")) {
    c.dirichlet_data = pick<DirichletDataKind>(
        *v, "dirichlet_data", {{"zero", DirichletDataKind::Zero}, {"linear", DirichletDataKind::Linear}});
  }
  if (auto v = tree.get_optional<std::string>("problem.poincare")) {
    c.poincare = pick<PoincareChoice>(*v, "poincare",
                                      {{"auto", PoincareChoice::Auto},
                                       {"exact", PoincareChoice::Exact},
                                       {"cr_bound", PoincareChoice::CrBound}});
  }
  if (auto v = tree.get_optional<std::string>("problem.grad_norm_convention")) {
    c.grad_norm = parse_grad_norm_convention(*v);
  }

  c.n = get_number(tree, "run.n", c.n);
  c.eps = get_number(tree, "run.eps", c.eps);
  if (auto v = tree.get_optional<std::string>("sweep_mesh.n_list")) c.n_list = parse_list<int>(*v, "n_list");
  if (auto v = tree.get_optional<std::string>("sweep_mesh.extended_n_list")) {
    c.extended_n_list = parse_list<int>(*v, "extended_n_list");
  }
  c.band_n = get_number(tree, "sweep_band.n", c.band_n);
  if (auto v = tree.get_optional<std::string>("sweep_band.eps_list")) {
    c.eps_list = parse_list<double>(*v, "eps_list");
  }
  if (auto v = tree.get_optional<std::string>("output.dir")) c.output_dir = *v;

  c.validate();
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse_config(in);
}

void RunConfig::validate() const {
  auto sorted = [](const std::vector<int>& v) { return std::is_sorted(v.begin(), v.end()); };
  if (!sorted(n_list) || !sorted(extended_n_list)) throw ConfigError("n lists must be sorted ascending");
  for (int k : n_list) {
    if (k < 1) throw ConfigError("n must be positive");
  }
  if (domain == DomainKind::Rectangle && !rect.valid()) throw ConfigError("degenerate rect");
  const Rect box = domain == DomainKind::Rectangle ? rect : Rect{0.0, 1.0, 0.0, 1.0};
  if (!region.valid() || !box.contains(region, 1e-12)) {
    throw ConfigError("region of interest is not inside the domain");
  }
  if (domain == DomainKind::LShape && Domain::l_shape().intersection_area(region) <= 0.0) {
    throw ConfigError("region of interest misses the L-shaped domain");
  }
  for (const auto& side : neumann_sides) {
    if (side != "left" && side != "right" && side != "bottom" && side != "top") {
      throw ConfigError("unknown side '" + side + "'");
    }
  }
  if (boundary == BoundarySetup::Mixed && neumann_sides.empty()) {
    throw ConfigError("mixed boundary needs neumann_sides");
  }
  if (source == SourceKind::Sine && boundary == BoundarySetup::Mixed && neumann_sides.size() == 4) {
    throw ConfigError("pure-Neumann problem with the sine source is incompatible");
  }
}

}  // namespace hypercircle
