#pragma once

#include <optional>

#include "c0ip/assembly.hpp"
#include "c0ip/field.hpp"
#include "c0ip/space.hpp"

namespace c0ip {

/// Error of a discrete function against a reference field.
///
/// Seminorms are stored as norms (square roots). The jump sums are stored as
/// defined, without a square root:
///   jump_n_1  = sum_e h_e^-1 ||[[d_n e]]||^2
///   jump_n_3  = sum_e h_e^-3 ||[[d_n e]]||^2
///   jump_nn_1 = sum_e h_e^-1 ||[[d_nn e]]||^2
/// over all edges, boundary edges included (jump = trace there). Then
///   triple2^2 = h2_broken^2 + jump_n_1
///   triple3^2 = h3_broken^2 + jump_nn_1 + jump_n_3
///   norm_iota_h^2 = triple2^2 + iota^2 triple3^2.
struct ErrorReport {
  double l2 = 0.0;
  double h1 = 0.0;
  double h2_broken = 0.0;
  double h3_broken = 0.0;
  double jump_n_1 = 0.0;
  double jump_n_3 = 0.0;
  double jump_nn_1 = 0.0;
  double triple2 = 0.0;
  double triple3 = 0.0;
  double norm_iota_h = 0.0;
  double osc = 0.0;
  int dofs = 0;
  double h = 0.0;
  double iota = 0.0;
  double eta = 0.0;

  /// Recomputes the composite norms from the stored parts.
  void finalize();
};

/// Error norms of (reference - wh). Volume terms use a degree `quad.error`
/// triangle rule, jumps use `quad.edge_points` Gauss points per edge. The
/// reference is evaluated from both sides of each edge, so a smooth field
/// contributes nothing to interior jumps.
ErrorReport error_norms(const DiscreteFunction& wh, const ElementJetField& reference,
                        double iota, const QuadratureConfig& quad = {});
ErrorReport error_norms(const DiscreteFunction& wh, const JetField& reference, double iota,
                        const QuadratureConfig& quad = {});

/// Osc_h(f) = (sum_K h_K^4 ||f - mean_K f||_{0,K}^2)^{1/2}, h_K = diam(K).
double oscillation(const ScalarField& f, const Mesh& mesh, int degree = 12);

/// Averaged elementwise L2 projection onto P3 into V_h: interior vertex
/// values and gradients are the mean over the vertex patch of Pi^3_K v and
/// grad Pi^3_K v, barycenter values are v(barycenter), and boundary vertex
/// DoFs are zero.
DiscreteFunction quasi_interpolate(std::shared_ptr<const HermiteSpace> space,
                                   const ScalarField& v, int moment_degree = 12);

/// log2(coarse / fine); empty when either error is not positive and finite.
std::optional<double> rate(double coarse, double fine);

}  // namespace c0ip
