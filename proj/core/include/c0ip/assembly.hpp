#pragma once

#include <iosfwd>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "c0ip/field.hpp"
#include "c0ip/quadrature.hpp"
#include "c0ip/space.hpp"

namespace c0ip {

inline constexpr double kDefaultPenalty = 10.0;

/// Quadrature choices. Stiffness integrands are at most degree 2, so the
/// stiffness degree only has to be >= 2.
struct QuadratureConfig {
  int stiffness = 4;
  int load = 8;
  int error = 12;
  int edge_points = 4;
};

enum class Form { A, B };

using Matrix10 = Eigen::Matrix<double, 10, 10>;

struct LocalVolumeMatrices {
  Matrix10 a;  // (grad^3 phi_j, grad^3 phi_i)_K
  Matrix10 b;  // (grad^2 phi_j, grad^2 phi_i)_K
};

/// Element matrices of the volume parts of a_h and b_h. The third
/// derivatives of cubics are constant, so `a` is |K| times the contraction at
/// the barycenter; `b` uses `rule`.
LocalVolumeMatrices local_volume_matrices(const HermiteBasis& basis,
                                          const TriangleGeometry& geometry,
                                          const TriangleRule& rule);

/// Edge contribution of a_h or b_h on the stacked local DoFs (K+ DoFs 0-9,
/// then K- DoFs 10-19). `minus` is null on boundary edges, where jump and
/// average both equal the K+ trace and the result is 10 x 10.
Eigen::MatrixXd local_edge_matrix(const Edge& edge, const HermiteBasis& plus,
                                  const HermiteBasis* minus, const LineRule& rule, double eta,
                                  Form which);

/// S = iota^2 A + B on free DoFs together with the load vector.
struct AssembledSystem {
  Eigen::SparseMatrix<double> matrix;
  Eigen::SparseMatrix<double> a_form;
  Eigen::SparseMatrix<double> b_form;
  Eigen::VectorXd load;
  double iota = 0.0;
  double eta = kDefaultPenalty;
};

/// Throws std::invalid_argument if eta <= 0 or iota < 0. With threads > 1 the
/// element and edge kernels run concurrently; triplets are still inserted in
/// (element, edge) order so the result is identical to serial assembly.
AssembledSystem assemble(const HermiteSpace& space, double iota, double eta,
                         const ScalarField& load, const QuadratureConfig& quad = {},
                         int threads = 1);

/// F_i = (f, phi_i) on free DoFs.
Eigen::VectorXd assemble_load(const HermiteSpace& space, const ScalarField& load, int degree);

/// a_h(w, phi_i) and b_h(w, phi_i) for a smooth field w (its interior-edge
/// jumps vanish) and every free basis function phi_i.
struct FormAction {
  Eigen::VectorXd a;
  Eigen::VectorXd b;
};
FormAction apply_forms(const HermiteSpace& space, const JetField& w, double eta,
                       const QuadratureConfig& quad = {});

/// r_i = (f, phi_i) - iota^2 a_h(w, phi_i) - b_h(w, phi_i) for an exact solution w.
Eigen::VectorXd galerkin_residual(const HermiteSpace& space, const JetField& w,
                                  const ScalarField& load, double iota, double eta,
                                  const QuadratureConfig& quad = {});

void write_matrix_market(std::ostream& out, const Eigen::SparseMatrix<double>& m);
void write_vector(std::ostream& out, const Eigen::VectorXd& v);

}  // namespace c0ip
