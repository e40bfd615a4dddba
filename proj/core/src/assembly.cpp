#include "c0ip/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <vector>

namespace c0ip {

namespace {

constexpr std::array<double, 3> kHessMultiplicity{1.0, 2.0, 1.0};
constexpr std::array<double, 4> kThirdMultiplicity{1.0, 3.0, 3.0, 1.0};

// Jump and average rows of the stacked local basis at one edge point.
struct EdgeTraces {
  Eigen::VectorXd jn, jnn, jnt;
  Eigen::VectorXd ann, annn, annt;

  explicit EdgeTraces(int m)
      : jn(Eigen::VectorXd::Zero(m)),
        jnn(Eigen::VectorXd::Zero(m)),
        jnt(Eigen::VectorXd::Zero(m)),
        ann(Eigen::VectorXd::Zero(m)),
        annn(Eigen::VectorXd::Zero(m)),
        annt(Eigen::VectorXd::Zero(m)) {}
};

EdgeTraces edge_traces(const Edge& edge, const HermiteBasis& plus, const HermiteBasis* minus,
                       const Point& x) {
  EdgeTraces tr(minus ? 20 : 10);
  // boundary: jump = average = trace
  const double avg = minus ? 0.5 : 1.0;
  auto fill = [&](const HermiteBasis& basis, int offset, double jump_sign) {
    const auto table = basis.eval(x, 3);
    for (int i = 0; i < 10; ++i) {
      const auto d = directional_derivatives(table[i], edge.normal, edge.tangent);
      tr.jn(offset + i) = jump_sign * d.n;
      tr.jnn(offset + i) = jump_sign * d.nn;
      tr.jnt(offset + i) = jump_sign * d.nt;
      tr.ann(offset + i) = avg * d.nn;
      tr.annn(offset + i) = avg * d.nnn;
      tr.annt(offset + i) = avg * d.nnt;
    }
  };
  fill(plus, 0, 1.0);
  if (minus) fill(*minus, 10, -1.0);
  return tr;
}

struct EdgeMatrices {
  Eigen::MatrixXd a;
  Eigen::MatrixXd b;
};

// M(i, j) = form(phi_j, phi_i) restricted to one edge.
EdgeMatrices edge_matrices(const Edge& edge, const HermiteBasis& plus, const HermiteBasis* minus,
                           const LineRule& rule, double eta) {
  const int m = minus ? 20 : 10;
  EdgeMatrices out{Eigen::MatrixXd::Zero(m, m), Eigen::MatrixXd::Zero(m, m)};
  const double h = edge.length;
  const double pen1 = eta / h;
  const double pen3 = eta / (h * h * h);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const double w = rule.weights[q] * h;
    const EdgeTraces tr = edge_traces(edge, plus, minus, edge.point_at(rule.points[q]));
    out.a.noalias() -= w * (tr.jnn * tr.annn.transpose() + tr.annn * tr.jnn.transpose());
    out.a.noalias() -= 2.0 * w * (tr.jnt * tr.annt.transpose() + tr.annt * tr.jnt.transpose());
    out.a.noalias() += w * pen1 * tr.jnn * tr.jnn.transpose();
    out.a.noalias() += w * pen3 * tr.jn * tr.jn.transpose();
    out.b.noalias() -= w * (tr.jn * tr.ann.transpose() + tr.ann * tr.jn.transpose());
    out.b.noalias() += w * pen1 * tr.jn * tr.jn.transpose();
  }
  return out;
}

Point map_to(const TriangleGeometry& g, const Eigen::Vector2d& ref) {
  return g.origin + g.jacobian * ref;
}

// Runs work(i) for i in [begin, end) on up to `threads` workers.
template <class Work>
void parallel_for(int begin, int end, int threads, const Work& work) {
  const int count = end - begin;
  if (threads <= 1 || count < 2 * threads) {
    for (int i = begin; i < end; ++i) work(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int k = 0; k < threads; ++k) {
    const int lo = begin + count * k / threads;
    const int hi = begin + count * (k + 1) / threads;
    pool.emplace_back([lo, hi, &work] {
      for (int i = lo; i < hi; ++i) work(i);
    });
  }
  for (auto& t : pool) t.join();
}

using Triplets = std::vector<Eigen::Triplet<double>>;

template <class Local, class Ids>
void scatter(const DofMap& dofs, const Local& local, const Ids& ids, Triplets& out) {
  const int m = static_cast<int>(ids.size());
  for (int i = 0; i < m; ++i) {
    const int fi = dofs.free_index(ids[i]);
    if (fi < 0) continue;
    for (int j = 0; j < m; ++j) {
      const int fj = dofs.free_index(ids[j]);
      if (fj < 0) continue;
      out.emplace_back(fi, fj, local(i, j));
    }
  }
}

}  // namespace

LocalVolumeMatrices local_volume_matrices(const HermiteBasis& basis,
                                          const TriangleGeometry& geometry,
                                          const TriangleRule& rule) {
  LocalVolumeMatrices out;
  out.a.setZero();
  out.b.setZero();

  const auto center = basis.eval(geometry.barycenter, 3);
  Eigen::Matrix<double, 4, 10> third;
  for (int i = 0; i < 10; ++i) {
    for (int c = 0; c < 4; ++c) third(c, i) = center[i].third[c];
  }
  const Eigen::Vector4d m3(kThirdMultiplicity[0], kThirdMultiplicity[1], kThirdMultiplicity[2],
                           kThirdMultiplicity[3]);
  out.a = geometry.area * third.transpose() * m3.asDiagonal() * third;

  const Eigen::Vector3d m2(kHessMultiplicity[0], kHessMultiplicity[1], kHessMultiplicity[2]);
  const double jac = 2.0 * geometry.area;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const auto table = basis.eval(map_to(geometry, rule.points[q]), 2);
    Eigen::Matrix<double, 3, 10> hess;
    for (int i = 0; i < 10; ++i) {
      for (int c = 0; c < 3; ++c) hess(c, i) = table[i].hess[c];
    }
    out.b.noalias() += rule.weights[q] * jac * hess.transpose() * m2.asDiagonal() * hess;
  }
  return out;
}

Eigen::MatrixXd local_edge_matrix(const Edge& edge, const HermiteBasis& plus,
                                  const HermiteBasis* minus, const LineRule& rule, double eta,
                                  Form which) {
  auto m = edge_matrices(edge, plus, minus, rule, eta);
  return which == Form::A ? std::move(m.a) : std::move(m.b);
}

Eigen::VectorXd assemble_load(const HermiteSpace& space, const ScalarField& load, int degree) {
  const Mesh& mesh = space.mesh();
  const DofMap& dofs = space.dofs();
  const TriangleRule rule = triangle_rule(degree);
  Eigen::VectorXd f = Eigen::VectorXd::Zero(dofs.num_free());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& g = mesh.geometry(t);
    const auto ids = dofs.element_dofs(t);
    Eigen::Matrix<double, 10, 1> local = Eigen::Matrix<double, 10, 1>::Zero();
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Point x = map_to(g, rule.points[q]);
      const double fw = load(x) * rule.weights[q] * 2.0 * g.area;
      const auto table = space.basis(t).eval(x, 0);
      for (int i = 0; i < 10; ++i) local(i) += fw * table[i].value;
    }
    for (int i = 0; i < 10; ++i) {
      const int fi = dofs.free_index(ids[i]);
      if (fi >= 0) f(fi) += local(i);
    }
  }
  return f;
}

AssembledSystem assemble(const HermiteSpace& space, double iota, double eta,
                         const ScalarField& load, const QuadratureConfig& quad, int threads) {
  if (!(eta > 0.0)) throw std::invalid_argument("penalty parameter eta must be positive");
  if (!(iota >= 0.0)) throw std::invalid_argument("size parameter iota must be non-negative");

  const Mesh& mesh = space.mesh();
  const DofMap& dofs = space.dofs();
  const TriangleRule volume_rule = triangle_rule(quad.stiffness);
  const LineRule edge_rule_ = edge_rule(quad.edge_points);

  Triplets ta;
  Triplets tb;
  const std::size_t estimate = 100 * mesh.triangles().size() + 400 * mesh.edges().size();
  ta.reserve(estimate);
  tb.reserve(estimate);

  // Kernels run in blocks; each block is scattered in index order.
  constexpr int kBlock = 1024;
  {
    std::vector<LocalVolumeMatrices> locals(kBlock);
    for (int lo = 0; lo < mesh.num_triangles(); lo += kBlock) {
      const int hi = std::min(lo + kBlock, mesh.num_triangles());
      parallel_for(lo, hi, threads, [&](int t) {
        locals[t - lo] = local_volume_matrices(space.basis(t), mesh.geometry(t), volume_rule);
      });
      for (int t = lo; t < hi; ++t) {
        const auto ids = dofs.element_dofs(t);
        scatter(dofs, locals[t - lo].a, ids, ta);
        scatter(dofs, locals[t - lo].b, ids, tb);
      }
    }
  }
  {
    std::vector<EdgeMatrices> locals(kBlock);
    for (int lo = 0; lo < mesh.num_edges(); lo += kBlock) {
      const int hi = std::min(lo + kBlock, mesh.num_edges());
      parallel_for(lo, hi, threads, [&](int k) {
        const Edge& e = mesh.edges()[k];
        const HermiteBasis* minus = e.boundary ? nullptr : &space.basis(e.minus);
        locals[k - lo] = edge_matrices(e, space.basis(e.plus), minus, edge_rule_, eta);
      });
      for (int k = lo; k < hi; ++k) {
        const Edge& e = mesh.edges()[k];
        std::vector<int> ids;
        const auto plus_ids = dofs.element_dofs(e.plus);
        ids.assign(plus_ids.begin(), plus_ids.end());
        if (!e.boundary) {
          const auto minus_ids = dofs.element_dofs(e.minus);
          ids.insert(ids.end(), minus_ids.begin(), minus_ids.end());
        }
        scatter(dofs, locals[k - lo].a, ids, ta);
        scatter(dofs, locals[k - lo].b, ids, tb);
      }
    }
  }

  const int n = dofs.num_free();
  AssembledSystem sys;
  sys.iota = iota;
  sys.eta = eta;
  sys.a_form.resize(n, n);
  sys.b_form.resize(n, n);
  sys.a_form.setFromTriplets(ta.begin(), ta.end());
  sys.b_form.setFromTriplets(tb.begin(), tb.end());
  sys.matrix = iota * iota * sys.a_form + sys.b_form;
  sys.matrix.makeCompressed();
  sys.load = assemble_load(space, load, quad.load);
  return sys;
}

FormAction apply_forms(const HermiteSpace& space, const JetField& w, double eta,
                       const QuadratureConfig& quad) {
  const Mesh& mesh = space.mesh();
  const DofMap& dofs = space.dofs();
  const TriangleRule rule = triangle_rule(quad.error);
  const LineRule line = edge_rule(quad.edge_points);

  FormAction out{Eigen::VectorXd::Zero(dofs.num_free()), Eigen::VectorXd::Zero(dofs.num_free())};
  auto add = [&](const std::vector<int>& ids, const Eigen::VectorXd& la,
                 const Eigen::VectorXd& lb) {
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const int fi = dofs.free_index(ids[i]);
      if (fi < 0) continue;
      out.a(fi) += la(static_cast<Eigen::Index>(i));
      out.b(fi) += lb(static_cast<Eigen::Index>(i));
    }
  };

  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& g = mesh.geometry(t);
    Eigen::VectorXd la = Eigen::VectorXd::Zero(10);
    Eigen::VectorXd lb = Eigen::VectorXd::Zero(10);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Point x = map_to(g, rule.points[q]);
      const double wq = rule.weights[q] * 2.0 * g.area;
      const Jet wj = w(x);
      const auto table = space.basis(t).eval(x, 3);
      for (int i = 0; i < 10; ++i) {
        double s3 = 0.0;
        for (int c = 0; c < 4; ++c) s3 += kThirdMultiplicity[c] * wj.third[c] * table[i].third[c];
        double s2 = 0.0;
        for (int c = 0; c < 3; ++c) s2 += kHessMultiplicity[c] * wj.hess[c] * table[i].hess[c];
        la(i) += wq * s3;
        lb(i) += wq * s2;
      }
    }
    const auto ids = dofs.element_dofs(t);
    add(std::vector<int>(ids.begin(), ids.end()), la, lb);
  }

  for (const Edge& e : mesh.edges()) {
    const HermiteBasis* minus = e.boundary ? nullptr : &space.basis(e.minus);
    const int m = minus ? 20 : 10;
    const double h = e.length;
    Eigen::VectorXd la = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd lb = Eigen::VectorXd::Zero(m);
    for (std::size_t q = 0; q < line.size(); ++q) {
      const Point x = e.point_at(line.points[q]);
      const double wq = line.weights[q] * h;
      const EdgeTraces tr = edge_traces(e, space.basis(e.plus), minus, x);
      // traces of the smooth field: its interior jumps vanish
      const auto d = directional_derivatives(w(x), e.normal, e.tangent);
      const double jump = e.boundary ? 1.0 : 0.0;
      const double jn = jump * d.n;
      const double jnn = jump * d.nn;
      const double jnt = jump * d.nt;
      la += wq * (-d.nnn * tr.jnn - jnn * tr.annn - 2.0 * d.nnt * tr.jnt - 2.0 * jnt * tr.annt +
                  (eta / h) * jnn * tr.jnn + (eta / (h * h * h)) * jn * tr.jn);
      lb += wq * (-d.nn * tr.jn - jn * tr.ann + (eta / h) * jn * tr.jn);
    }
    std::vector<int> ids;
    const auto plus_ids = dofs.element_dofs(e.plus);
    ids.assign(plus_ids.begin(), plus_ids.end());
    if (minus) {
      const auto minus_ids = dofs.element_dofs(e.minus);
      ids.insert(ids.end(), minus_ids.begin(), minus_ids.end());
    }
    add(ids, la, lb);
  }
  return out;
}

Eigen::VectorXd galerkin_residual(const HermiteSpace& space, const JetField& w,
                                  const ScalarField& load, double iota, double eta,
                                  const QuadratureConfig& quad) {
  const FormAction action = apply_forms(space, w, eta, quad);
  const Eigen::VectorXd f = assemble_load(space, load, quad.error);
  return f - iota * iota * action.a - action.b;
}

void write_matrix_market(std::ostream& out, const Eigen::SparseMatrix<double>& m) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
  const auto old = out.precision(17);
  for (int k = 0; k < m.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it) {
      out << it.row() + 1 << ' ' << it.col() + 1 << ' ' << it.value() << '\n';
    }
  }
  out.precision(old);
}

void write_vector(std::ostream& out, const Eigen::VectorXd& v) {
  const auto old = out.precision(17);
  for (Eigen::Index i = 0; i < v.size(); ++i) out << v(i) << '\n';
  out.precision(old);
}

}  // namespace c0ip
