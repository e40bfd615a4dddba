#include "c0ip/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>

namespace c0ip {

void ErrorReport::finalize() {
  triple2 = std::sqrt(h2_broken * h2_broken + jump_n_1);
  triple3 = std::sqrt(h3_broken * h3_broken + jump_nn_1 + jump_n_3);
  norm_iota_h = std::sqrt(triple2 * triple2 + iota * iota * triple3 * triple3);
}

ErrorReport error_norms(const DiscreteFunction& wh, const ElementJetField& reference,
                        double iota, const QuadratureConfig& quad) {
  const HermiteSpace& space = wh.space();
  const Mesh& mesh = space.mesh();
  const TriangleRule rule = triangle_rule(quad.error);
  const LineRule line = edge_rule(quad.edge_points);

  double l2 = 0.0, h1 = 0.0, h2 = 0.0, h3 = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& g = mesh.geometry(t);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Point x = g.origin + g.jacobian * rule.points[q];
      const double w = rule.weights[q] * 2.0 * g.area;
      const Jet e = reference(t, x) - wh.eval(t, x, 3);
      l2 += w * e.value * e.value;
      h1 += w * e.grad.squaredNorm();
      h2 += w * (e.hess[0] * e.hess[0] + 2.0 * e.hess[1] * e.hess[1] + e.hess[2] * e.hess[2]);
      h3 += w * (e.third[0] * e.third[0] + 3.0 * e.third[1] * e.third[1] +
                 3.0 * e.third[2] * e.third[2] + e.third[3] * e.third[3]);
    }
  }

  double jn1 = 0.0, jn3 = 0.0, jnn1 = 0.0;
  for (const Edge& e : mesh.edges()) {
    const double h = e.length;
    double sn = 0.0, snn = 0.0;
    for (std::size_t q = 0; q < line.size(); ++q) {
      const Point x = e.point_at(line.points[q]);
      const double w = line.weights[q] * h;
      const auto dp =
          directional_derivatives(reference(e.plus, x) - wh.eval(e.plus, x, 2), e.normal, e.tangent);
      double jump_n = dp.n;
      double jump_nn = dp.nn;
      if (!e.boundary) {
        const auto dm = directional_derivatives(reference(e.minus, x) - wh.eval(e.minus, x, 2),
                                                e.normal, e.tangent);
        jump_n -= dm.n;
        jump_nn -= dm.nn;
      }
      sn += w * jump_n * jump_n;
      snn += w * jump_nn * jump_nn;
    }
    jn1 += sn / h;
    jn3 += sn / (h * h * h);
    jnn1 += snn / h;
  }

  ErrorReport r;
  r.l2 = std::sqrt(l2);
  r.h1 = std::sqrt(h1);
  r.h2_broken = std::sqrt(h2);
  r.h3_broken = std::sqrt(h3);
  r.jump_n_1 = jn1;
  r.jump_n_3 = jn3;
  r.jump_nn_1 = jnn1;
  r.dofs = space.dofs().num_free();
  r.h = mesh.mesh_parameter();
  r.iota = iota;
  r.finalize();
  return r;
}

ErrorReport error_norms(const DiscreteFunction& wh, const JetField& reference, double iota,
                        const QuadratureConfig& quad) {
  return error_norms(wh, per_element(reference), iota, quad);
}

double oscillation(const ScalarField& f, const Mesh& mesh, int degree) {
  const TriangleRule rule = triangle_rule(degree);
  double total = 0.0;
  std::vector<double> values(rule.size());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& g = mesh.geometry(t);
    for (std::size_t q = 0; q < rule.size(); ++q) values[q] = f(g.origin + g.jacobian * rule.points[q]);
    // mean as a correction to values[0], so a constant f has no deviation at all
    double shift = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) shift += 2.0 * rule.weights[q] * (values[q] - values[0]);
    const double mean = values[0] + shift;
    double dev = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double d = values[q] - mean;
      dev += rule.weights[q] * 2.0 * g.area * d * d;
    }
    const double h2 = g.diameter * g.diameter;
    total += h2 * h2 * dev;
  }
  return std::sqrt(total);
}

DiscreteFunction quasi_interpolate(std::shared_ptr<const HermiteSpace> space,
                                   const ScalarField& v, int moment_degree) {
  const Mesh& mesh = space->mesh();
  const DofMap& dofs = space->dofs();
  const TriangleRule rule = triangle_rule(std::max(moment_degree, 6));

  // Hermite DoFs of Pi^3_K v, per triangle. The basis is nodal, so solving
  // the local mass system in it yields the DoFs directly.
  std::vector<Eigen::Matrix<double, 10, 1>> projected(mesh.triangles().size());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& g = mesh.geometry(t);
    Matrix10 mass = Matrix10::Zero();
    Eigen::Matrix<double, 10, 1> moments = Eigen::Matrix<double, 10, 1>::Zero();
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Point x = g.origin + g.jacobian * rule.points[q];
      const double w = rule.weights[q] * 2.0 * g.area;
      const auto table = space->basis(t).eval(x, 0);
      Eigen::Matrix<double, 10, 1> phi;
      for (int i = 0; i < 10; ++i) phi(i) = table[i].value;
      mass.noalias() += w * phi * phi.transpose();
      moments += w * v(x) * phi;
    }
    projected[t] = mass.ldlt().solve(moments);
  }

  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(dofs.num_dofs());
  for (int vtx = 0; vtx < mesh.num_vertices(); ++vtx) {
    if (mesh.is_boundary_vertex(vtx)) continue;
    const auto& patch = mesh.vertex_patch(vtx);
    Eigen::Vector3d sum = Eigen::Vector3d::Zero();
    for (int t : patch) {
      const auto& tri = mesh.triangles()[t];
      const int local = tri[0] == vtx ? 0 : tri[1] == vtx ? 1 : 2;
      sum += Eigen::Vector3d(projected[t](local), projected[t](3 + 2 * local),
                             projected[t](4 + 2 * local));
    }
    sum /= static_cast<double>(patch.size());
    for (int c = 0; c < 3; ++c) coeffs(dofs.vertex_dof(vtx, c)) = sum(c);
  }
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    coeffs(dofs.cell_dof(t)) = v(mesh.geometry(t).barycenter);
  }
  return DiscreteFunction(std::move(space), std::move(coeffs));
}

std::optional<double> rate(double coarse, double fine) {
  if (!(coarse > 0.0) || !(fine > 0.0) || !std::isfinite(coarse) || !std::isfinite(fine)) {
    return std::nullopt;
  }
  return std::log2(coarse / fine);
}

}  // namespace c0ip
