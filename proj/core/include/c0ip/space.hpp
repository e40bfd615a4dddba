#pragma once

#include <array>
#include <memory>
#include <vector>

#include <Eigen/Core>

#include "c0ip/hermite.hpp"
#include "c0ip/mesh.hpp"

namespace c0ip {

/// Global Hermite DoF numbering.
///
/// Vertex v owns 3v (value), 3v+1 (d/dx), 3v+2 (d/dy); triangle t owns
/// 3V + t (barycenter value). Every DoF attached to a boundary vertex is
/// constrained to zero. Free DoFs are renumbered consecutively in global order.
class DofMap {
 public:
  explicit DofMap(const Mesh& mesh);

  int num_dofs() const { return static_cast<int>(free_index_.size()); }
  int num_free() const { return static_cast<int>(free_to_global_.size()); }

  int vertex_dof(int v, int component) const { return 3 * v + component; }
  int cell_dof(int t) const { return 3 * num_vertices_ + t; }
  /// Global indices of the 10 local DoFs of triangle t in HermiteBasis order.
  std::array<int, 10> element_dofs(int t) const { return element_dofs_[t]; }

  bool is_constrained(int global) const { return free_index_[global] < 0; }
  /// Free index of a global DoF, or -1 when constrained.
  int free_index(int global) const { return free_index_[global]; }
  const std::vector<int>& free_to_global() const { return free_to_global_; }

 private:
  int num_vertices_ = 0;
  std::vector<std::array<int, 10>> element_dofs_;
  std::vector<int> free_index_;
  std::vector<int> free_to_global_;
};

/// Mesh + DoF map + per-triangle Hermite bases. Immutable once built.
class HermiteSpace {
 public:
  explicit HermiteSpace(Mesh mesh);

  const Mesh& mesh() const { return mesh_; }
  const DofMap& dofs() const { return dofs_; }
  const HermiteBasis& basis(int t) const { return bases_[t]; }

 private:
  Mesh mesh_;
  DofMap dofs_;
  std::vector<HermiteBasis> bases_;
};

/// Element of V_h given by its full global coefficient vector.
class DiscreteFunction {
 public:
  DiscreteFunction(std::shared_ptr<const HermiteSpace> space, Eigen::VectorXd coefficients);

  /// Zero-extends a free-DoF vector to all DoFs.
  static DiscreteFunction from_free(std::shared_ptr<const HermiteSpace> space,
                                    const Eigen::VectorXd& free_values);

  const HermiteSpace& space() const { return *space_; }
  const std::shared_ptr<const HermiteSpace>& space_ptr() const { return space_; }
  const Eigen::VectorXd& coefficients() const { return coefficients_; }
  Eigen::VectorXd free_values() const;

  std::array<double, 10> local_coefficients(int t) const;
  /// Jet of the restriction to triangle t at x (x is expected in t).
  Jet eval(int t, const Point& x, int max_order = 3) const;

 private:
  std::shared_ptr<const HermiteSpace> space_;
  Eigen::VectorXd coefficients_;
};

}  // namespace c0ip
