#pragma once

#include <array>
#include <span>

#include <Eigen/Core>

#include "c0ip/mesh.hpp"

namespace c0ip {

/// Value and Cartesian derivatives through order three at a point.
/// Hessian components are (xx, xy, yy); third-order components are
/// (xxx, xxy, xyy, yyy).
struct Jet {
  double value = 0.0;
  Eigen::Vector2d grad = Eigen::Vector2d::Zero();
  std::array<double, 3> hess{};
  std::array<double, 4> third{};

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(double s);
};

Jet operator-(Jet a, const Jet& b);
Jet operator+(Jet a, const Jet& b);

/// Derivatives of a function along an orthonormal frame (n, t).
struct DirectionalDerivatives {
  double n = 0.0, t = 0.0;
  double nn = 0.0, nt = 0.0, tt = 0.0;
  double nnn = 0.0, nnt = 0.0, ntt = 0.0, ttt = 0.0;
};

/// Full contractions of the Cartesian derivative tensors with copies of n and t.
/// Throws std::invalid_argument unless |n| = |t| = 1 and n.t = 0 (to 1e-10).
DirectionalDerivatives directional_derivatives(const Jet& jet, const Eigen::Vector2d& n,
                                               const Eigen::Vector2d& t);

/// H(u, v) for the symmetric Hessian stored as (xx, xy, yy).
double contract2(const std::array<double, 3>& h, const Eigen::Vector2d& u,
                 const Eigen::Vector2d& v);
/// T(u, v, w) for the symmetric 3-tensor stored as (xxx, xxy, xyy, yyy).
double contract3(const std::array<double, 4>& d, const Eigen::Vector2d& u,
                 const Eigen::Vector2d& v, const Eigen::Vector2d& w);

/// Cubic Hermite shape functions on one physical triangle.
///
/// Local DoF order: values at the three vertices, then (d/dx, d/dy) at
/// vertex 0, 1, 2, then the value at the barycenter. The functions are built
/// directly on K by inverting the DoF matrix of monomials in the scaled
/// coordinates (x - barycenter) / diameter, so gradient DoFs are global
/// Cartesian components and need no transformation.
class HermiteBasis {
 public:
  static constexpr int kDofs = 10;
  using Table = std::array<Jet, kDofs>;

  HermiteBasis() = default;
  explicit HermiteBasis(const std::array<Point, 3>& corners);

  /// Shape functions and derivatives through max_order (0..3) at x.
  Table eval(const Point& x, int max_order = 3) const;

  /// Jet of sum_i coeffs[i] * phi_i at x.
  Jet eval(std::span<const double, kDofs> coeffs, const Point& x, int max_order = 3) const;

  /// Monomial coefficients; column i holds phi_i in the scaled monomial basis.
  const Eigen::Matrix<double, kDofs, kDofs>& coefficients() const { return coefficients_; }
  const Point& center() const { return center_; }
  double scale() const { return scale_; }

  /// Applies the 10 DoF functionals to a jet-valued field.
  template <class Field>
  std::array<double, kDofs> dofs_of(const Field& field) const {
    std::array<double, kDofs> out{};
    for (int v = 0; v < 3; ++v) {
      const Jet j = field(corners_[v]);
      out[v] = j.value;
      out[3 + 2 * v] = j.grad.x();
      out[4 + 2 * v] = j.grad.y();
    }
    out[9] = field(center_).value;
    return out;
  }

  const std::array<Point, 3>& corners() const { return corners_; }

 private:
  std::array<Point, 3> corners_{};
  Point center_ = Point::Zero();
  double scale_ = 1.0;
  Eigen::Matrix<double, kDofs, kDofs> coefficients_ = Eigen::Matrix<double, kDofs, kDofs>::Zero();
};

}  // namespace c0ip
