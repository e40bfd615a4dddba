#include "c0ip/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <utility>

namespace c0ip {

namespace {

double cross(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }

}  // namespace

Mesh::Mesh(std::vector<Point> vertices, std::vector<std::array<int, 3>> triangles,
           double shape_bound)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
  if (vertices_.empty() || triangles_.empty()) {
    throw MeshError("mesh needs at least one vertex and one triangle");
  }
  const int nv = num_vertices();
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    for (int v : triangles_[t]) {
      if (v < 0 || v >= nv) {
        throw MeshError("triangle " + std::to_string(t) + " references vertex " +
                        std::to_string(v) + " out of range");
      }
    }
  }
  build_geometry(shape_bound);
  build_edge_topology();
  mesh_parameter_ = h_max_;
}

std::array<Point, 3> Mesh::corners(int t) const {
  const auto& tri = triangles_[t];
  return {vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]};
}

void Mesh::build_geometry(double shape_bound) {
  geometry_.resize(triangles_.size());
  h_max_ = 0.0;
  for (int t = 0; t < num_triangles(); ++t) {
    const auto p = corners(t);
    TriangleGeometry& g = geometry_[t];
    g.origin = p[0];
    g.jacobian.col(0) = p[1] - p[0];
    g.jacobian.col(1) = p[2] - p[0];
    const double signed_area = 0.5 * cross(p[1] - p[0], p[2] - p[0]);
    if (!(signed_area > 0.0)) {
      throw MeshError("triangle " + std::to_string(t) +
                      " is degenerate or not counterclockwise");
    }
    g.area = signed_area;
    g.barycenter = (p[0] + p[1] + p[2]) / 3.0;
    const double a = (p[1] - p[2]).norm();
    const double b = (p[2] - p[0]).norm();
    const double c = (p[0] - p[1]).norm();
    g.diameter = std::max({a, b, c});
    g.inradius = 2.0 * g.area / (a + b + c);
    h_max_ = std::max(h_max_, g.diameter);
    if (g.diameter / g.inradius > shape_bound) {
      throw MeshError("triangle " + std::to_string(t) + " violates shape regularity (h/rho = " +
                      std::to_string(g.diameter / g.inradius) + ")");
    }
  }
}

void Mesh::build_edge_topology() {
  // (min vertex, max vertex) -> incident (triangle, local edge) pairs
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> incidence;
  for (int t = 0; t < num_triangles(); ++t) {
    const auto& tri = triangles_[t];
    for (int i = 0; i < 3; ++i) {
      const int a = tri[(i + 1) % 3];
      const int b = tri[(i + 2) % 3];
      incidence[{std::min(a, b), std::max(a, b)}].emplace_back(t, i);
    }
  }

  edges_.clear();
  edges_.reserve(incidence.size());
  triangle_edges_.assign(triangles_.size(), {-1, -1, -1});
  boundary_vertex_.assign(vertices_.size(), false);

  // Number edges in order of first appearance (triangle, local edge) so the
  // enumeration follows the triangle list.
  std::vector<std::pair<std::pair<int, int>, const std::vector<std::pair<int, int>>*>> order;
  order.reserve(incidence.size());
  for (const auto& [key, inc] : incidence) {
    if (inc.size() > 2) {
      throw MeshError("non-manifold edge (" + std::to_string(key.first) + ", " +
                      std::to_string(key.second) + ") shared by " +
                      std::to_string(inc.size()) + " triangles");
    }
    order.emplace_back(key, &inc);
  }
  std::sort(order.begin(), order.end(), [](const auto& l, const auto& r) {
    return l.second->front() < r.second->front();
  });

  for (const auto& [key, inc_ptr] : order) {
    const auto& inc = *inc_ptr;
    // K+ is the incident triangle with the smaller index.
    const auto [plus, local] = inc.front();
    Edge e;
    e.plus = plus;
    e.minus = inc.size() == 2 ? inc.back().first : -1;
    e.boundary = inc.size() == 1;
    const auto& tri = triangles_[plus];
    e.vertices = {tri[(local + 1) % 3], tri[(local + 2) % 3]};
    e.endpoints = {vertices_[e.vertices[0]], vertices_[e.vertices[1]]};
    const Point d = e.endpoints[1] - e.endpoints[0];
    e.length = d.norm();
    e.tangent = d / e.length;
    // outward normal of a counterclockwise triangle: tangent rotated clockwise
    e.normal = Point(e.tangent.y(), -e.tangent.x());
    const int id = static_cast<int>(edges_.size());
    for (const auto& [t, i] : inc) triangle_edges_[t][i] = id;
    if (e.boundary) {
      boundary_vertex_[e.vertices[0]] = true;
      boundary_vertex_[e.vertices[1]] = true;
    }
    edges_.push_back(e);
  }

  vertex_patch_.assign(vertices_.size(), {});
  for (int t = 0; t < num_triangles(); ++t) {
    for (int v : triangles_[t]) vertex_patch_[v].push_back(t);
  }
}

int Mesh::num_interior_vertices() const {
  return static_cast<int>(std::count(boundary_vertex_.begin(), boundary_vertex_.end(), false));
}

double Mesh::shape_regularity() const {
  double worst = 0.0;
  for (const auto& g : geometry_) worst = std::max(worst, g.diameter / g.inradius);
  return worst;
}

double Mesh::total_area() const {
  double sum = 0.0;
  for (const auto& g : geometry_) sum += g.area;
  return sum;
}

Mesh build_structured_mesh(int n) {
  if (n < 1) throw std::invalid_argument("structured mesh needs n >= 1");
  std::vector<Point> vertices;
  vertices.reserve(static_cast<std::size_t>((n + 1) * (n + 1)));
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      vertices.emplace_back(static_cast<double>(i) / n, static_cast<double>(j) / n);
    }
  }
  auto id = [n](int i, int j) { return j * (n + 1) + i; };
  std::vector<std::array<int, 3>> triangles;
  triangles.reserve(static_cast<std::size_t>(2 * n * n));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  Mesh mesh(std::move(vertices), std::move(triangles));
  mesh.set_mesh_parameter(1.0 / n);
  return mesh;
}

Mesh read_mesh(std::istream& in) {
  auto next_line = [&in](std::istringstream& line) {
    std::string text;
    while (std::getline(in, text)) {
      const auto first = text.find_first_not_of(" \t\r");
      if (first == std::string::npos || text[first] == '#') continue;
      line.clear();
      line.str(text);
      return true;
    }
    return false;
  };

  std::istringstream line;
  long nv = 0;
  long nt = 0;
  if (!next_line(line) || !(line >> nv >> nt) || nv <= 0 || nt <= 0) {
    throw MeshError("mesh header must be \"<vertices> <triangles>\"");
  }
  std::vector<Point> vertices(static_cast<std::size_t>(nv));
  for (auto& p : vertices) {
    if (!next_line(line) || !(line >> p.x() >> p.y())) throw MeshError("truncated vertex list");
  }
  std::vector<std::array<int, 3>> triangles(static_cast<std::size_t>(nt));
  for (auto& t : triangles) {
    if (!next_line(line) || !(line >> t[0] >> t[1] >> t[2])) {
      throw MeshError("truncated triangle list");
    }
  }
  return Mesh(std::move(vertices), std::move(triangles));
}

Mesh read_mesh_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MeshError("cannot open mesh file " + path.string());
  return read_mesh(in);
}

void write_mesh(std::ostream& out, const Mesh& mesh) {
  out << mesh.num_vertices() << ' ' << mesh.num_triangles() << '\n';
  const auto old = out.precision(17);
  for (const auto& p : mesh.vertices()) out << p.x() << ' ' << p.y() << '\n';
  for (const auto& t : mesh.triangles()) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  out.precision(old);
}

}  // namespace c0ip
