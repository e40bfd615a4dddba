#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "c0ip/analysis.hpp"
#include "c0ip/assembly.hpp"
#include "c0ip/solver.hpp"

namespace c0ip {

enum class StudyExample { Example1, Example2, Custom };
enum class OutputFormat { Csv, Json };

std::string_view to_string(StudyExample example);
StudyExample parse_example(std::string_view name);

/// Convergence-study grid. Rows are produced for every (iota, eta, n) in
/// that nesting order, so consecutive rows at fixed (iota, eta) refine n.
struct StudyConfig {
  StudyExample example = StudyExample::Example1;
  std::vector<int> mesh_sizes{4, 8, 16, 32, 64};
  std::vector<double> iotas;  // empty: per-example default
  std::vector<double> etas{kDefaultPenalty};
  QuadratureConfig quadrature;
  SolverOptions solver;
  /// When set, this mesh replaces the structured meshes and mesh_sizes is ignored.
  std::string mesh_file;
  int threads = 1;
  /// Record wall-clock time per solve; off makes output byte-reproducible.
  bool timing = true;

  /// Fills defaults and throws std::invalid_argument on an invalid grid.
  void validate();
};

std::vector<double> default_iotas(StudyExample example);

struct StudyRow {
  StudyExample example = StudyExample::Example1;
  int n = 0;
  ErrorReport errors;
  bool has_reference = true;
  std::optional<double> rate_norm_iota_h;
  double solve_seconds = 0.0;
  SolverMethod solver = SolverMethod::Direct;
  double residual = 0.0;
  bool success = false;
  bool factorization_ok = false;
  std::string diagnostic;
};

struct StudyResult {
  StudyConfig config;
  std::vector<StudyRow> rows;

  bool all_succeeded() const;
  /// Rows for one (iota, eta) series, ordered by refinement.
  std::vector<const StudyRow*> series(double iota, double eta) const;
};

/// Build mesh, assemble, solve, and measure errors for one grid point.
StudyRow run_point(StudyExample example, int n, double iota, double eta,
                   const StudyConfig& config);

/// Runs every grid point (concurrently when config.threads > 1) and fills
/// rate columns between consecutive n of each series.
StudyResult run_study(StudyConfig config);

void write_csv(std::ostream& out, const StudyResult& result);
void write_json(std::ostream& out, const StudyResult& result);
/// Human-readable table: one row per iota (example 1) or per norm (example 2).
void print_table(std::ostream& out, const StudyResult& result);

/// "4,8,16" -> {4, 8, 16}
std::vector<int> parse_int_list(std::string_view text);
std::vector<double> parse_double_list(std::string_view text);

}  // namespace c0ip
