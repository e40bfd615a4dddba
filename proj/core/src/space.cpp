#include "c0ip/space.hpp"

#include <stdexcept>
#include <utility>

namespace c0ip {

DofMap::DofMap(const Mesh& mesh) : num_vertices_(mesh.num_vertices()) {
  const int total = 3 * mesh.num_vertices() + mesh.num_triangles();
  free_index_.assign(static_cast<std::size_t>(total), 0);
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    if (!mesh.is_boundary_vertex(v)) continue;
    for (int c = 0; c < 3; ++c) free_index_[vertex_dof(v, c)] = -1;
  }
  for (int g = 0; g < total; ++g) {
    if (free_index_[g] < 0) continue;
    free_index_[g] = static_cast<int>(free_to_global_.size());
    free_to_global_.push_back(g);
  }
  element_dofs_.resize(mesh.triangles().size());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles()[t];
    auto& d = element_dofs_[t];
    for (int i = 0; i < 3; ++i) {
      d[i] = vertex_dof(tri[i], 0);
      d[3 + 2 * i] = vertex_dof(tri[i], 1);
      d[4 + 2 * i] = vertex_dof(tri[i], 2);
    }
    d[9] = cell_dof(t);
  }
}

HermiteSpace::HermiteSpace(Mesh mesh) : mesh_(std::move(mesh)), dofs_(mesh_) {
  bases_.reserve(mesh_.triangles().size());
  for (int t = 0; t < mesh_.num_triangles(); ++t) bases_.emplace_back(mesh_.corners(t));
}

DiscreteFunction::DiscreteFunction(std::shared_ptr<const HermiteSpace> space,
                                   Eigen::VectorXd coefficients)
    : space_(std::move(space)), coefficients_(std::move(coefficients)) {
  if (!space_) throw std::invalid_argument("discrete function needs a space");
  if (coefficients_.size() != space_->dofs().num_dofs()) {
    throw std::invalid_argument("coefficient vector does not match the DoF count");
  }
}

DiscreteFunction DiscreteFunction::from_free(std::shared_ptr<const HermiteSpace> space,
                                             const Eigen::VectorXd& free_values) {
  const DofMap& dofs = space->dofs();
  if (free_values.size() != dofs.num_free()) {
    throw std::invalid_argument("free vector does not match the free DoF count");
  }
  Eigen::VectorXd full = Eigen::VectorXd::Zero(dofs.num_dofs());
  for (int i = 0; i < dofs.num_free(); ++i) full(dofs.free_to_global()[i]) = free_values(i);
  return DiscreteFunction(std::move(space), std::move(full));
}

Eigen::VectorXd DiscreteFunction::free_values() const {
  const DofMap& dofs = space_->dofs();
  Eigen::VectorXd out(dofs.num_free());
  for (int i = 0; i < dofs.num_free(); ++i) out(i) = coefficients_(dofs.free_to_global()[i]);
  return out;
}

std::array<double, 10> DiscreteFunction::local_coefficients(int t) const {
  const auto ids = space_->dofs().element_dofs(t);
  std::array<double, 10> c{};
  for (int i = 0; i < 10; ++i) c[i] = coefficients_(ids[i]);
  return c;
}

Jet DiscreteFunction::eval(int t, const Point& x, int max_order) const {
  const auto c = local_coefficients(t);
  return space_->basis(t).eval(std::span<const double, 10>(c), x, max_order);
}

}  // namespace c0ip
