#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <vector>

#include "hypercircle/geometry.hpp"

namespace hypercircle {

class MeshError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class BoundaryLabel { Dirichlet, Neumann };

/// Edge of a triangle together with the orientation relation to the global
/// edge. `sign` is +1 when the triangle's outward normal agrees with the
/// global edge normal, the global normal of edge (a -> b) being the tangent
/// b - a rotated clockwise.
struct EdgeIncidence {
  int edge = -1;
  int sign = 0;
};

/// Conforming triangulation. Immutable after construction.
///
/// Local edge i of a triangle is the one opposite local vertex i. Global
/// edges are stored as (a, b) with a < b.
class Mesh {
 public:
  /// Builds the connectivity for counterclockwise triangles. Throws on
  /// non-positive areas or edges shared by more than two triangles.
  Mesh(std::vector<Point> vertices, std::vector<std::array<int, 3>> triangles, Domain domain,
       int cells_per_unit = 0);

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  const std::vector<std::array<int, 2>>& edges() const { return edges_; }
  const std::vector<std::array<EdgeIncidence, 3>>& tri_edges() const { return tri_edges_; }
  /// Triangles adjacent to each edge; the second entry is -1 on the boundary.
  const std::vector<std::array<int, 2>>& edge_triangles() const { return edge_triangles_; }
  const std::vector<int>& boundary_edges() const { return boundary_edges_; }
  /// Label per entry of boundary_edges().
  const std::vector<BoundaryLabel>& boundary_labels() const { return boundary_labels_; }
  const std::vector<double>& h_K() const { return h_K_; }
  double h() const { return h_; }
  const Domain& domain() const { return domain_; }
  /// Grid parameter n of structured meshes (cells per unit length), 0 otherwise.
  int cells_per_unit() const { return cells_per_unit_; }

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_triangles() const { return static_cast<int>(triangles_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  Triangle triangle(int t) const;
  double area(int t) const { return areas_[t]; }
  double total_area() const;
  double edge_length(int e) const;
  Point edge_midpoint(int e) const;
  bool is_boundary_edge(int e) const { return edge_triangles_[e][1] < 0; }
  /// Label of edge e, which must be a boundary edge.
  BoundaryLabel edge_label(int e) const;

  /// Copy with boundary labels assigned from the edge midpoint.
  Mesh with_boundary_labels(const std::function<BoundaryLabel(Point)>& label_of) const;

  /// Plain-text dump: "v x y", "t i j k", "e i j label" lines.
  void dump(std::ostream& os) const;

 private:
  std::vector<Point> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<std::array<int, 2>> edges_;
  std::vector<std::array<EdgeIncidence, 3>> tri_edges_;
  std::vector<std::array<int, 2>> edge_triangles_;
  std::vector<int> boundary_edges_;
  std::vector<int> boundary_slot_;  // edge -> index into boundary_edges_, or -1
  std::vector<BoundaryLabel> boundary_labels_;
  std::vector<double> areas_;
  std::vector<double> h_K_;
  double h_ = 0.0;
  Domain domain_;
  int cells_per_unit_ = 0;
};

using MeshPtr = std::shared_ptr<const Mesh>;

/// Uniform grid of squares with side 1/n, each split by its lower-left to
/// upper-right diagonal. Range lengths must be integer multiples of 1/n.
Mesh build_uniform_rect_mesh(Rect range, int n);

/// (0,1)^2 minus [0.5,1]^2 with side 1/n; n must be even.
Mesh build_uniform_lshape_mesh(int n);

struct MeshStatistics {
  double h = 0.0;
  int n_tri = 0;
  int n_edge = 0;
  int n_vert = 0;
};

MeshStatistics mesh_statistics(const Mesh& m);

}  // namespace hypercircle
