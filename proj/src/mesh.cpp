#include "hypercircle/mesh.hpp"

#include <cmath>
#include <map>
#include <ostream>
#include <string>

namespace hypercircle {

Mesh::Mesh(std::vector<Point> vertices, std::vector<std::array<int, 3>> triangles, Domain domain,
           int cells_per_unit)
    : vertices_(std::move(vertices)),
      triangles_(std::move(triangles)),
      domain_(std::move(domain)),
      cells_per_unit_(cells_per_unit) {
  const int nv = num_vertices();
  std::map<std::pair<int, int>, int> edge_id;
  tri_edges_.resize(triangles_.size());
  areas_.resize(triangles_.size());
  h_K_.resize(triangles_.size());

  for (int t = 0; t < num_triangles(); ++t) {
    const auto& tri = triangles_[t];
    for (int i : tri) {
      if (i < 0 || i >= nv) throw MeshError("triangle " + std::to_string(t) + " has a bad vertex index");
    }
    const Triangle K = triangle(t);
    const double a = K.signed_area();
    if (!(a > 0.0)) throw MeshError("triangle " + std::to_string(t) + " has non-positive signed area");
    areas_[t] = a;
    h_K_[t] = K.longest_edge();
    h_ = std::max(h_, h_K_[t]);

    for (int i = 0; i < 3; ++i) {
      const int a_v = tri[(i + 1) % 3];
      const int b_v = tri[(i + 2) % 3];
      const auto key = std::minmax(a_v, b_v);
      auto [it, inserted] = edge_id.try_emplace({key.first, key.second}, num_edges());
      if (inserted) {
        edges_.push_back({key.first, key.second});
        edge_triangles_.push_back({t, -1});
      } else {
        auto& adj = edge_triangles_[it->second];
        if (adj[1] >= 0) throw MeshError("edge shared by more than two triangles");
        adj[1] = t;
      }
      // Counterclockwise traversal a_v -> b_v has the outward normal on its right.
      tri_edges_[t][i] = {it->second, a_v < b_v ? 1 : -1};
    }
  }

  boundary_slot_.assign(edges_.size(), -1);
  for (int e = 0; e < num_edges(); ++e) {
    if (edge_triangles_[e][1] < 0) {
      boundary_slot_[e] = static_cast<int>(boundary_edges_.size());
      boundary_edges_.push_back(e);
    }
  }
  boundary_labels_.assign(boundary_edges_.size(), BoundaryLabel::Dirichlet);
}

Triangle Mesh::triangle(int t) const {
  const auto& tri = triangles_[t];
  return Triangle{{vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]}};
}

double Mesh::total_area() const {
  double a = 0.0;
  for (double v : areas_) a += v;
  return a;
}

double Mesh::edge_length(int e) const {
  return norm(vertices_[edges_[e][1]] - vertices_[edges_[e][0]]);
}

Point Mesh::edge_midpoint(int e) const {
  return 0.5 * (vertices_[edges_[e][0]] + vertices_[edges_[e][1]]);
}

BoundaryLabel Mesh::edge_label(int e) const {
  const int slot = boundary_slot_[e];
  if (slot < 0) throw MeshError("edge " + std::to_string(e) + " is not a boundary edge");
  return boundary_labels_[slot];
}

Mesh Mesh::with_boundary_labels(const std::function<BoundaryLabel(Point)>& label_of) const {
  Mesh copy = *this;
  for (std::size_t i = 0; i < boundary_edges_.size(); ++i) {
    copy.boundary_labels_[i] = label_of(edge_midpoint(boundary_edges_[i]));
  }
  return copy;
}

void Mesh::dump(std::ostream& os) const {
  const auto old_precision = os.precision(17);
  for (const auto& v : vertices_) os << "v " << v.x << ' ' << v.y << '\n';
  for (const auto& t : triangles_) os << "t " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  for (int e = 0; e < num_edges(); ++e) {
    const char* label = "interior";
    if (is_boundary_edge(e)) label = edge_label(e) == BoundaryLabel::Dirichlet ? "dirichlet" : "neumann";
    os << "e " << edges_[e][0] << ' ' << edges_[e][1] << ' ' << label << '\n';
  }
  os.precision(old_precision);
}

namespace {

int cells_along(double length, int n, const char* axis) {
  const double cells = length * n;
  const double rounded = std::round(cells);
  if (rounded < 1.0 || std::abs(cells - rounded) > 1e-9 * std::max(1.0, cells)) {
    throw MeshError(std::string("range length along ") + axis + " is not an integer multiple of 1/n");
  }
  return static_cast<int>(rounded);
}

struct Grid {
  std::vector<Point> vertices;
  std::vector<std::array<int, 3>> triangles;
};

Grid make_grid(Rect range, int n) {
  if (n < 1) throw MeshError("cells per unit must be >= 1");
  if (!range.valid()) throw MeshError("degenerate range");
  const int nx = cells_along(range.width(), n, "x");
  const int ny = cells_along(range.height(), n, "y");
  Grid g;
  g.vertices.reserve((nx + 1) * (ny + 1));
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      g.vertices.push_back({range.x0 + range.width() * i / nx, range.y0 + range.height() * j / ny});
    }
  }
  auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
  g.triangles.reserve(2 * nx * ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int v00 = id(i, j), v10 = id(i + 1, j), v01 = id(i, j + 1), v11 = id(i + 1, j + 1);
      g.triangles.push_back({v00, v10, v11});
      g.triangles.push_back({v00, v11, v01});
    }
  }
  return g;
}

}  // namespace

Mesh build_uniform_rect_mesh(Rect range, int n) {
  Grid g = make_grid(range, n);
  return Mesh(std::move(g.vertices), std::move(g.triangles), Domain::rectangle(range), n);
}

Mesh build_uniform_lshape_mesh(int n) {
  if (n < 2 || n % 2 != 0) throw MeshError("L-shape mesh needs an even number of cells per unit");
  Grid g = make_grid({0.0, 1.0, 0.0, 1.0}, n);

  std::vector<std::array<int, 3>> kept;
  std::vector<int> used(g.vertices.size(), 0);
  for (const auto& t : g.triangles) {
    const Point c = (1.0 / 3.0) * (g.vertices[t[0]] + g.vertices[t[1]] + g.vertices[t[2]]);
    if (c.x > 0.5 && c.y > 0.5) continue;
    kept.push_back(t);
    for (int v : t) used[v] = 1;
  }
  std::vector<int> renumber(g.vertices.size(), -1);
  std::vector<Point> vertices;
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    if (used[v]) {
      renumber[v] = static_cast<int>(vertices.size());
      vertices.push_back(g.vertices[v]);
    }
  }
  for (auto& t : kept) {
    for (int& v : t) v = renumber[v];
  }
  return Mesh(std::move(vertices), std::move(kept), Domain::l_shape(), n);
}

MeshStatistics mesh_statistics(const Mesh& m) {
  return {m.h(), m.num_triangles(), m.num_edges(), m.num_vertices()};
}

}  // namespace hypercircle
