#include <cmath>

#include <gtest/gtest.h>

#include "c0ip/assembly.hpp"
#include "oracle.hpp"

namespace {

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

Eigen::MatrixXd production_system(int n, double iota, double eta) {
  const c0ip::HermiteSpace s(c0ip::build_structured_mesh(n));
  const auto sys = c0ip::assemble(s, iota, eta, [](const c0ip::Point&) { return 0.0; });
  return Eigen::MatrixXd(sys.matrix);
}

}  // namespace

TEST(Oracle, AgreesWithSparseAssemblyOnTwoTriangles) {
  const auto form = oracle::brute_force_forms(oracle::unit_square(1), 1.0, 10.0);
  const Eigen::MatrixXd dense = form.system();
  const Eigen::MatrixXd sparse = production_system(1, 1.0, 10.0);
  ASSERT_EQ(dense.rows(), sparse.rows());
  EXPECT_LT(max_abs(dense - sparse), 1e-10 * max_abs(sparse));
}

TEST(Oracle, AgreesAcrossParameterGrid) {
  for (int n : {1, 2}) {
    for (double iota : {0.0, 1e-8, 1e-4, 1.0}) {
      for (double eta : {1e-4, 1.0, 10.0, 1e4}) {
        const Eigen::MatrixXd dense = oracle::brute_force_forms(oracle::unit_square(n), iota, eta).system();
        const Eigen::MatrixXd sparse = production_system(n, iota, eta);
        EXPECT_LT(max_abs(dense - sparse), 1e-10 * max_abs(sparse)) << n << ' ' << iota << ' ' << eta;
      }
    }
  }
}

TEST(Oracle, ZeroIotaDropsTheAForm) {
  const auto form = oracle::brute_force_forms(oracle::unit_square(1), 0.0, 10.0);
  EXPECT_EQ(max_abs(form.iota * form.iota * form.a()), 0.0);
  EXPECT_GT(max_abs(form.a()), 0.0);
}

TEST(Oracle, DoublingEtaOnlyChangesPenaltyEntries) {
  const auto mesh = oracle::unit_square(2);
  const auto f1 = oracle::brute_force_forms(mesh, 1.0, 10.0);
  const auto f2 = oracle::brute_force_forms(mesh, 1.0, 20.0);
  const Eigen::MatrixXd diff = f2.system() - f1.system();
  Eigen::MatrixXd penalty = f1.a_penalty_nn + f1.a_penalty_n + f1.b_penalty_n;
  Eigen::MatrixXd pen(diff.rows(), diff.cols());
  for (std::size_t i = 0; i < f1.free_dofs.size(); ++i)
    for (std::size_t j = 0; j < f1.free_dofs.size(); ++j) pen(i, j) = penalty(f1.free_dofs[i], f1.free_dofs[j]);
  EXPECT_LT(max_abs(diff - pen), 1e-10 * max_abs(pen));
  const double tiny = 1e-12 * max_abs(pen);
  for (int i = 0; i < diff.rows(); ++i)
    for (int j = 0; j < diff.cols(); ++j) EXPECT_EQ(std::abs(diff(i, j)) > tiny, std::abs(pen(i, j)) > tiny);
  EXPECT_FALSE(f1.trace.empty());
}

TEST(Oracle, QuadratureAndBasisSanity) {
  const auto g = oracle::golub_welsch(5);
  double s = 0.0;
  for (std::size_t q = 0; q < g.x.size(); ++q) s += g.w[q] * std::pow(g.x[q], 9);
  EXPECT_NEAR(s, 0.1, 1e-14);
  const auto t = oracle::triangle_gauss(6);
  double a = 0.0;
  for (std::size_t q = 0; q < t.x.size(); ++q) a += t.w[q] * t.x[q].x() * t.x[q].x() * t.x[q].y();
  EXPECT_NEAR(a, 1.0 / 60.0, 1e-15);
  const oracle::MonomialHermite b({oracle::Vec2(0.2, 0.1), oracle::Vec2(1.1, 0.3), oracle::Vec2(0.4, 0.9)});
  EXPECT_NEAR(b.eval(4, {1.1, 0.3}).value, 0.0, 1e-13);
  EXPECT_NEAR(b.eval(5, {1.1, 0.3}).grad[0], 1.0, 1e-12);
}

TEST(Oracle, DiscoversEdgesIndependently) {
  const auto edges = oracle::discover_edges(oracle::unit_square(4));
  EXPECT_EQ(edges.size(), 56u);
  int interior = 0;
  for (const auto& e : edges) {
    interior += e.minus >= 0;
    EXPECT_NEAR(e.n.dot(e.t), 0.0, 1e-15);
    if (e.minus >= 0) EXPECT_LT(e.plus, e.minus);
  }
  EXPECT_EQ(interior, 56 - 16);
}

TEST(FdCheck, CubicPolynomialThirdOrder) {
  const auto cubic = [](int a, int b, const oracle::Vec2& x) {
    // p = x^3 - 2 x^2 y + y^3 + x y
    const double X = x.x(), Y = x.y();
    if (a == 0 && b == 0) return X * X * X - 2 * X * X * Y + Y * Y * Y + X * Y;
    if (a == 1 && b == 0) return 3 * X * X - 4 * X * Y + Y;
    if (a == 0 && b == 1) return -2 * X * X + 3 * Y * Y + X;
    if (a == 2 && b == 0) return 6 * X - 4 * Y;
    if (a == 1 && b == 1) return -4 * X + 1;
    if (a == 0 && b == 2) return 6 * Y;
    if (a == 3 && b == 0) return 6.0;
    if (a == 2 && b == 1) return -4.0;
    if (a == 1 && b == 2) return 0.0;
    if (a == 0 && b == 3) return 6.0;
    return 0.0;
  };
  EXPECT_LT(oracle::fd_derivative_check(cubic, 3, {{0.3, 0.4}, {1.5, -0.2}}), 1e-9);
}

TEST(FdCheck, SinCubedSixthOrder) {
  const auto f = [](int a, int b, const oracle::Vec2& x) {
    auto g = [](int k, double s) {
      const double u = M_PI * s;
      return 0.25 * (3 * std::pow(M_PI, k) * std::sin(u + k * M_PI / 2) -
                     std::pow(3 * M_PI, k) * std::sin(3 * u + k * M_PI / 2));
    };
    return g(a, x.x()) * g(b, x.y());
  };
  EXPECT_LT(oracle::fd_derivative_check(f, 6, {{0.37, 0.61}}), 1e-4);
}

TEST(FdCheck, ConstantField) {
  const auto c = [](int a, int b, const oracle::Vec2&) { return a + b == 0 ? 4.2 : 0.0; };
  for (int order = 1; order <= 6; ++order) EXPECT_EQ(oracle::fd_derivative_check(c, order, {{0.5, 0.5}}), 0.0);
}
