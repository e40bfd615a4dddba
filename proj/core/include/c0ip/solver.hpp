#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "c0ip/assembly.hpp"

namespace c0ip {

enum class SolverMethod { Direct, ConjugateGradient };

std::string_view to_string(SolverMethod method);
/// Accepts "direct" and "cg"; throws std::invalid_argument otherwise.
SolverMethod parse_solver_method(std::string_view name);

struct SolverOptions {
  SolverMethod method = SolverMethod::Direct;
  /// Relative residual target; <= 0 selects 1e-10 (direct) or 1e-9 (cg).
  double tolerance = 0.0;
  /// Iteration cap for cg; <= 0 selects 10 * unknowns.
  int max_iterations = 0;
};

/// Outcome of one linear solve. `success` is false on factorization
/// breakdown, iteration-cap overrun, or a residual above tolerance;
/// `diagnostic` then says which. A direct solve whose relative residual
/// misses the tolerance still succeeds when its normwise backward error
/// ||Sx - F|| / (||S|| ||x|| + ||F||) is at rounding level (<= 1e-14): the
/// h^-6 conditioning of iota^2 a_h puts a floor under ||Sx - F|| / ||F||
/// that no double-precision solve can beat. The diagnostic records it.
struct SolveReport {
  Eigen::VectorXd solution;
  double relative_residual = 0.0;
  SolverMethod method = SolverMethod::Direct;
  int iterations = 0;
  bool factorization_ok = true;
  bool success = false;
  std::string diagnostic;
  std::vector<double> residual_history;
};

SolveReport solve(const AssembledSystem& system, const SolverOptions& options = {});

/// Same, for a bare symmetric matrix and right-hand side.
SolveReport solve(const Eigen::SparseMatrix<double>& matrix, const Eigen::VectorXd& rhs,
                  const SolverOptions& options = {});

}  // namespace c0ip
