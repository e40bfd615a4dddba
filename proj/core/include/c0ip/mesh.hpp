#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace c0ip {

using Point = Eigen::Vector2d;

class MeshError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An edge of the triangulation.
///
/// `plus` is the incident triangle K+ whose outward normal on the edge is
/// `normal`; `minus` is K- (or -1 on the boundary). `vertices` are listed in
/// the counterclockwise order of K+, so `tangent` points from vertices[0] to
/// vertices[1] and equals `normal` rotated by 90 degrees counterclockwise.
struct Edge {
  std::array<int, 2> vertices{};
  std::array<Point, 2> endpoints{};
  int plus = -1;
  int minus = -1;
  Point normal = Point::Zero();
  Point tangent = Point::Zero();
  double length = 0.0;
  bool boundary = false;

  Point point_at(double s) const { return (1.0 - s) * endpoints[0] + s * endpoints[1]; }
};

/// Affine data of one triangle: x = origin + jacobian * (xi, eta) maps the
/// reference triangle {xi, eta >= 0, xi + eta <= 1} onto K.
struct TriangleGeometry {
  Point origin = Point::Zero();
  Eigen::Matrix2d jacobian = Eigen::Matrix2d::Zero();
  Point barycenter = Point::Zero();
  double area = 0.0;
  double diameter = 0.0;
  double inradius = 0.0;
};

/// Immutable conforming triangulation of a polygon with derived edge topology.
class Mesh {
 public:
  static constexpr double kDefaultShapeBound = 10.0;

  /// Validates orientation and shape regularity, then builds edges.
  /// Throws MeshError on clockwise/degenerate triangles, out-of-range
  /// indices, non-manifold edges, or h_K / rho_K > shape_bound.
  Mesh(std::vector<Point> vertices, std::vector<std::array<int, 3>> triangles,
       double shape_bound = kDefaultShapeBound);

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  const std::vector<Edge>& edges() const { return edges_; }
  /// Edge indices of triangle t; entry i is the edge opposite local vertex i.
  const std::array<int, 3>& triangle_edges(int t) const { return triangle_edges_[t]; }
  const TriangleGeometry& geometry(int t) const { return geometry_[t]; }
  std::array<Point, 3> corners(int t) const;

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_triangles() const { return static_cast<int>(triangles_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  bool is_boundary_vertex(int v) const { return boundary_vertex_[v]; }
  int num_interior_vertices() const;
  /// Triangles sharing vertex v, ascending.
  const std::vector<int>& vertex_patch(int v) const { return vertex_patch_[v]; }

  /// max_K diam(K)
  double h_max() const { return h_max_; }
  /// Label used in convergence tables: 1/n for structured meshes, h_max otherwise.
  double mesh_parameter() const { return mesh_parameter_; }
  void set_mesh_parameter(double h) { mesh_parameter_ = h; }
  /// max_K h_K / rho_K
  double shape_regularity() const;
  double total_area() const;

 private:
  void build_geometry(double shape_bound);
  void build_edge_topology();

  std::vector<Point> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<Edge> edges_;
  std::vector<std::array<int, 3>> triangle_edges_;
  std::vector<TriangleGeometry> geometry_;
  std::vector<bool> boundary_vertex_;
  std::vector<std::vector<int>> vertex_patch_;
  double h_max_ = 0.0;
  double mesh_parameter_ = 0.0;
};

/// Uniform triangulation of [0,1]^2 with n x n cells, each split by the
/// diagonal from (i/n, j/n) to ((i+1)/n, (j+1)/n). Mesh parameter is 1/n.
Mesh build_structured_mesh(int n);

/// Plain-text format: "V T" header, V lines "x y", T lines "i j k"
/// (0-based, counterclockwise). Edge topology is always derived.
Mesh read_mesh(std::istream& in);
Mesh read_mesh_file(const std::filesystem::path& path);
void write_mesh(std::ostream& out, const Mesh& mesh);

}  // namespace c0ip
