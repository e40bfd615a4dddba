#include <random>

#include <gtest/gtest.h>

#include "c0ip/assembly.hpp"
#include "c0ip/problems.hpp"
#include "c0ip/solver.hpp"

using c0ip::HermiteSpace;
using c0ip::SolverMethod;
using c0ip::SolverOptions;

namespace {

c0ip::AssembledSystem example_system(int n, double iota, double eta) {
  const HermiteSpace s(c0ip::build_structured_mesh(n));
  const auto p = c0ip::example1(iota);
  return c0ip::assemble(s, iota, eta, p.load);
}

SolverOptions cg() {
  SolverOptions o;
  o.method = SolverMethod::ConjugateGradient;
  return o;
}

}  // namespace

TEST(Solver, ZeroRightHandSide) {
  auto sys = example_system(3, 1e-2, 10.0);
  sys.load.setZero();
  for (const auto& opts : {SolverOptions{}, cg()}) {
    const auto r = c0ip::solve(sys, opts);
    EXPECT_TRUE(r.success);
    EXPECT_EQ(r.solution.norm(), 0.0);
  }
}

TEST(Solver, ManufacturedRoundTrip) {
  const auto sys = example_system(8, 1e-2, 10.0);
  std::mt19937 rng(8);
  std::normal_distribution<double> g;
  Eigen::VectorXd x(sys.matrix.rows());
  for (int i = 0; i < x.size(); ++i) x(i) = g(rng);
  const Eigen::VectorXd rhs = sys.matrix * x;
  const auto r = c0ip::solve(sys.matrix, rhs);
  ASSERT_TRUE(r.success) << r.diagnostic;
  EXPECT_LT((r.solution - x).norm(), 1e-8 * x.norm());
  EXPECT_LE(r.relative_residual, 1e-10);
  EXPECT_EQ(r.method, SolverMethod::Direct);
}

TEST(Solver, DirectAndConjugateGradientsAgree) {
  const auto sys = example_system(2, 1e-6, 10.0);
  const auto d = c0ip::solve(sys);
  const auto c = c0ip::solve(sys, cg());
  ASSERT_TRUE(d.success) << d.diagnostic;
  ASSERT_TRUE(c.success) << c.diagnostic;
  EXPECT_LT((d.solution - c.solution).norm(), 1e-7 * d.solution.norm());
  EXPECT_GT(c.iterations, 0);
  EXPECT_EQ(c.residual_history.size(), static_cast<std::size_t>(c.iterations) + 1);
  EXPECT_LE(c.relative_residual, 1e-9);
}

TEST(Solver, DirectAndConjugateGradientsAgreeOnFinerMeshes) {
  for (int n : {4, 8}) {
    const auto sys = example_system(n, 1e-2, 10.0);
    SolverOptions o = cg();
    o.tolerance = 1e-10;
    const auto d = c0ip::solve(sys), c = c0ip::solve(sys, o);
    ASSERT_TRUE(c.success) << c.diagnostic;
    EXPECT_LT((d.solution - c.solution).norm(), 1e-7 * d.solution.norm()) << n;
  }
}

TEST(Solver, IndefiniteSystemReportsNotSpd) {
  const auto sys = example_system(4, 1e-8, 1e-4);
  const auto r = c0ip::solve(sys);
  EXPECT_FALSE(r.factorization_ok);
  EXPECT_FALSE(r.success);
  EXPECT_NE(r.diagnostic.find("not SPD"), std::string::npos);
  EXPECT_NE(r.diagnostic.find("eta"), std::string::npos);
}

TEST(Solver, IterationCapReportsHistory) {
  const auto sys = example_system(8, 1.0, 10.0);
  SolverOptions o = cg();
  o.max_iterations = 5;
  const auto r = c0ip::solve(sys, o);
  EXPECT_FALSE(r.success);
  EXPECT_EQ(r.iterations, 5);
  EXPECT_EQ(r.residual_history.size(), 6u);
  EXPECT_NE(r.diagnostic.find("did not converge"), std::string::npos);
}

TEST(Solver, ConditioningLimitedResidualIsAcceptedWithDiagnostic) {
  // iota = 1 at n = 32 conditions S like h^-6
  const auto sys = example_system(32, 1.0, 10.0);
  const auto r = c0ip::solve(sys);
  EXPECT_TRUE(r.factorization_ok);
  EXPECT_TRUE(r.success) << r.diagnostic;
  if (r.relative_residual > 1e-10) {
    EXPECT_NE(r.diagnostic.find("backward error"), std::string::npos);
  }
}

TEST(Solver, ZeroIotaMatchesBFormSolve) {
  const HermiteSpace s(c0ip::build_structured_mesh(6));
  const auto p = c0ip::example1(0.0);
  const auto sys = c0ip::assemble(s, 0.0, 10.0, p.load);
  const auto full = c0ip::solve(sys);
  const auto reduced = c0ip::solve(sys.b_form, sys.load);
  EXPECT_LT((full.solution - reduced.solution).norm(), 1e-12 * reduced.solution.norm());
}

TEST(Solver, NamesAndErrors) {
  EXPECT_EQ(c0ip::to_string(SolverMethod::Direct), "direct");
  EXPECT_EQ(c0ip::to_string(SolverMethod::ConjugateGradient), "cg");
  EXPECT_EQ(c0ip::parse_solver_method("cg"), SolverMethod::ConjugateGradient);
  EXPECT_THROW(c0ip::parse_solver_method("lu"), std::invalid_argument);
  Eigen::SparseMatrix<double> m(3, 3);
  EXPECT_THROW(c0ip::solve(m, Eigen::VectorXd::Zero(2)), std::invalid_argument);
}
