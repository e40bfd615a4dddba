#include "c0ip/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/LU>

namespace c0ip {

namespace {

constexpr int kMonomials = 10;
// exponents (p, q) of xi^p eta^q, graded by total degree
constexpr std::array<std::array<int, 2>, kMonomials> kExponents{{
    {0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}, {3, 0}, {2, 1}, {1, 2}, {0, 3}}};
// derivative multi-indices (a, b) in Jet storage order
constexpr std::array<std::array<int, 2>, 10> kDerivs = kExponents;

constexpr int derivs_for_order(int order) {
  return order <= 0 ? 1 : order == 1 ? 3 : order == 2 ? 6 : 10;
}

double falling(int p, int a) {
  double f = 1.0;
  for (int i = 0; i < a; ++i) f *= p - i;
  return f;
}

double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

// table(d, k) = d^{a+b}/dx^a dy^b of monomial k at the scaled point s
using MonoTable = Eigen::Matrix<double, 10, kMonomials>;

MonoTable monomial_table(const Point& s, double scale, int nderiv) {
  MonoTable table = MonoTable::Zero();
  for (int d = 0; d < nderiv; ++d) {
    const auto [a, b] = kDerivs[d];
    const double chain = ipow(1.0 / scale, a + b);
    for (int k = 0; k < kMonomials; ++k) {
      const auto [p, q] = kExponents[k];
      if (a > p || b > q) continue;
      table(d, k) = chain * falling(p, a) * falling(q, b) * ipow(s.x(), p - a) *
                    ipow(s.y(), q - b);
    }
  }
  return table;
}

Jet jet_from_row(const Eigen::Matrix<double, 10, 1>& v, int nderiv) {
  Jet j;
  j.value = v(0);
  if (nderiv > 1) j.grad = Eigen::Vector2d(v(1), v(2));
  if (nderiv > 3) j.hess = {v(3), v(4), v(5)};
  if (nderiv > 6) j.third = {v(6), v(7), v(8), v(9)};
  return j;
}

}  // namespace

Jet& Jet::operator+=(const Jet& o) {
  value += o.value;
  grad += o.grad;
  for (int i = 0; i < 3; ++i) hess[i] += o.hess[i];
  for (int i = 0; i < 4; ++i) third[i] += o.third[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  value -= o.value;
  grad -= o.grad;
  for (int i = 0; i < 3; ++i) hess[i] -= o.hess[i];
  for (int i = 0; i < 4; ++i) third[i] -= o.third[i];
  return *this;
}

Jet& Jet::operator*=(double s) {
  value *= s;
  grad *= s;
  for (auto& h : hess) h *= s;
  for (auto& t : third) t *= s;
  return *this;
}

Jet operator-(Jet a, const Jet& b) { return a -= b; }
Jet operator+(Jet a, const Jet& b) { return a += b; }

double contract2(const std::array<double, 3>& h, const Eigen::Vector2d& u,
                 const Eigen::Vector2d& v) {
  return h[0] * u.x() * v.x() + h[1] * (u.x() * v.y() + u.y() * v.x()) + h[2] * u.y() * v.y();
}

double contract3(const std::array<double, 4>& d, const Eigen::Vector2d& u,
                 const Eigen::Vector2d& v, const Eigen::Vector2d& w) {
  return d[0] * u.x() * v.x() * w.x() +
         d[1] * (u.x() * v.x() * w.y() + u.x() * v.y() * w.x() + u.y() * v.x() * w.x()) +
         d[2] * (u.x() * v.y() * w.y() + u.y() * v.x() * w.y() + u.y() * v.y() * w.x()) +
         d[3] * u.y() * v.y() * w.y();
}

DirectionalDerivatives directional_derivatives(const Jet& jet, const Eigen::Vector2d& n,
                                               const Eigen::Vector2d& t) {
  constexpr double tol = 1e-10;
  if (std::abs(n.norm() - 1.0) > tol || std::abs(t.norm() - 1.0) > tol ||
      std::abs(n.dot(t)) > tol) {
    throw std::invalid_argument("directional derivatives need an orthonormal frame");
  }
  DirectionalDerivatives d;
  d.n = jet.grad.dot(n);
  d.t = jet.grad.dot(t);
  d.nn = contract2(jet.hess, n, n);
  d.nt = contract2(jet.hess, n, t);
  d.tt = contract2(jet.hess, t, t);
  d.nnn = contract3(jet.third, n, n, n);
  d.nnt = contract3(jet.third, n, n, t);
  d.ntt = contract3(jet.third, n, t, t);
  d.ttt = contract3(jet.third, t, t, t);
  return d;
}

HermiteBasis::HermiteBasis(const std::array<Point, 3>& corners) : corners_(corners) {
  center_ = (corners[0] + corners[1] + corners[2]) / 3.0;
  scale_ = std::max({(corners[0] - corners[1]).norm(), (corners[1] - corners[2]).norm(),
                     (corners[2] - corners[0]).norm()});
  if (!(scale_ > 0.0)) throw std::invalid_argument("degenerate triangle");

  // dof_matrix(j, k) = DoF_j(monomial_k)
  Eigen::Matrix<double, kDofs, kMonomials> dof_matrix;
  for (int v = 0; v < 3; ++v) {
    const MonoTable m = monomial_table((corners[v] - center_) / scale_, scale_, 3);
    dof_matrix.row(v) = m.row(0);
    dof_matrix.row(3 + 2 * v) = m.row(1);
    dof_matrix.row(4 + 2 * v) = m.row(2);
  }
  dof_matrix.row(9) = monomial_table(Point::Zero(), scale_, 1).row(0);
  const Eigen::PartialPivLU<Eigen::Matrix<double, kDofs, kMonomials>> lu(dof_matrix);
  coefficients_ = lu.inverse();
}

HermiteBasis::Table HermiteBasis::eval(const Point& x, int max_order) const {
  const int nd = derivs_for_order(max_order);
  const MonoTable m = monomial_table((x - center_) / scale_, scale_, nd);
  const MonoTable phi = m * coefficients_;  // phi(d, i)
  Table out;
  for (int i = 0; i < kDofs; ++i) out[i] = jet_from_row(phi.col(i), nd);
  return out;
}

Jet HermiteBasis::eval(std::span<const double, kDofs> coeffs, const Point& x,
                       int max_order) const {
  const int nd = derivs_for_order(max_order);
  const MonoTable m = monomial_table((x - center_) / scale_, scale_, nd);
  const Eigen::Map<const Eigen::Matrix<double, kDofs, 1>> c(coeffs.data());
  const Eigen::Matrix<double, 10, 1> v = m * (coefficients_ * c);
  return jet_from_row(v, nd);
}

}  // namespace c0ip
