// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "c0ip/analysis.hpp"
#include "c0ip/problems.hpp"
#include "c0ip/solver.hpp"
#include "c0ip/study.hpp"
#include "oracle.hpp"

using c0ip::Point;
using c0ip::StudyExample;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [x] " << what;
    } else {
      detail << " [ok] " << what;
    }
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double finest_rate(const std::vector<const c0ip::StudyRow*>& s, double c0ip::ErrorReport::*field) {
  if (s.size() < 2) return std::nan("");
  const auto r = c0ip::rate(s[s.size() - 2]->errors.*field, s.back()->errors.*field);
  return r ? *r : std::nan("");
}

bool within(double v, double target, double tol) { return std::abs(v - target) <= tol; }

int report(int id, const Verdict& v) {
  std::printf("criterion %d %s:%s\n", id, v.pass ? "PASS" : "FAIL", v.detail.str().c_str());
  std::fflush(stdout);
  return v.pass ? 0 : 1;
}

// Target norm errors for example 1, eta = 10, h = 1/4 .. 1/64.
const std::map<double, std::vector<double>> kTable1 = {
    {1.0, {9.133e+01, 5.226e+01, 2.699e+01, 1.361e+01, 6.818e+00}},
    {1e-2, {1.090e+01, 5.996e+00, 2.696e+00, 1.326e+00, 6.729e-01}},
    {1e-4, {4.513e+00, 1.583e+00, 4.929e-01, 1.711e-01, 7.269e-02}},
    {1e-6, {4.398e+00, 1.446e+00, 3.736e-01, 8.883e-02, 2.224e-02}},
    {0.0, {4.397e+00, 1.444e+00, 3.722e-01, 8.761e-02, 2.113e-02}},
};

c0ip::StudyResult example1_result;

int criterion1() {
  Verdict v;
  c0ip::StudyConfig c;
  c.example = StudyExample::Example1;
  const auto start = std::chrono::steady_clock::now();
  example1_result = c0ip::run_study(c);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  v.check(seconds < 300.0, "grid time " + fmt("%.1f", seconds) + " s < 300 s");
  v.check(example1_result.all_succeeded(), "all solves succeeded");

  std::map<double, double> rates;
  for (const auto& [iota, target] : kTable1) {
    const auto s = example1_result.series(iota, 10.0);
    rates[iota] = finest_rate(s, &c0ip::ErrorReport::norm_iota_h);
    double worst = 1.0;
    for (std::size_t k = 0; k < s.size() && k < target.size(); ++k) {
      const double ratio = s[k]->errors.norm_iota_h / target[k];
      worst = std::max(worst, std::max(ratio, 1.0 / ratio));
    }
    v.check(worst <= 3.0, "iota=" + fmt("%g", iota) + " magnitude factor " + fmt("%.2f", worst) + " <= 3");
  }
  v.check(within(rates[1.0], 1.0, 0.15), "iota=1 rate " + fmt("%.3f", rates[1.0]) + " in 1.00+-0.15");
  for (double iota : {1e-6, 0.0}) {
    v.check(within(rates[iota], 2.0, 0.15),
            "iota=" + fmt("%g", iota) + " rate " + fmt("%.3f", rates[iota]) + " in 2.00+-0.15");
  }
  v.check(rates[1e-4] > 1.0 && rates[1e-4] < 2.0,
          "iota=1e-4 rate " + fmt("%.3f", rates[1e-4]) + " strictly between 1 and 2");
  v.detail << " (iota=1e-2 rate " << fmt("%.3f", rates[1e-2]) << ")";
  return report(1, v);
}

int criterion2() {
  Verdict v;
  c0ip::StudyConfig c;
  c.example = StudyExample::Example2;
  c.iotas = {1e-6, 1e-8};
  const auto r = c0ip::run_study(c);
  v.check(r.all_succeeded(), "all solves succeeded");
  struct Column {
    const char* name;
    double c0ip::ErrorReport::*field;
    double target, tol;
  };
  const Column cols[] = {{"norm_iota_h", &c0ip::ErrorReport::norm_iota_h, 2.0, 0.2},
                         {"h3_broken", &c0ip::ErrorReport::h3_broken, 1.0, 0.15},
                         {"h2_broken", &c0ip::ErrorReport::h2_broken, 2.0, 0.2},
                         {"h1", &c0ip::ErrorReport::h1, 3.0, 0.25},
                         {"l2", &c0ip::ErrorReport::l2, 4.0, 0.3}};
  for (double iota : c.iotas) {
    const auto s = r.series(iota, 10.0);
    for (const auto& col : cols) {
      const double rt = finest_rate(s, col.field);
      v.check(within(rt, col.target, col.tol), "iota=" + fmt("%g", iota) + " " + col.name + " rate " +
                                                   fmt("%.3f", rt) + " in " + fmt("%.1f", col.target) +
                                                   "+-" + fmt("%.2f", col.tol));
    }
  }
  const auto a = r.series(1e-6, 10.0), b = r.series(1e-8, 10.0);
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size() && k < b.size(); ++k) {
    for (const auto& col : cols) {
      const double x = a[k]->errors.*col.field, y = b[k]->errors.*col.field;
      worst = std::max(worst, std::abs(x - y) / std::abs(y));
    }
  }
  v.check(worst <= 0.05, "iota columns agree within " + fmt("%.2e", worst) + " <= 5%");
  return report(2, v);
}

int criterion3() {
  Verdict v;
  c0ip::StudyConfig c;
  c.example = StudyExample::Example1;
  c.iotas = {1e-8};
  c.etas = {1e-4, 1e-6, 1.0, 1e4, 1e6};
  const auto r = c0ip::run_study(c);
  for (double eta : {1e-4, 1e-6, 1.0}) {
    const auto s = r.series(1e-8, eta);
    bool all_ok = true, recorded = false;
    std::string diag;
    for (const auto* row : s) {
      all_ok = all_ok && row->success;
      if (!row->success && !row->diagnostic.empty()) {
        recorded = true;
        if (diag.empty()) diag = row->diagnostic;
      }
    }
    if (all_ok) {
      const double rt = finest_rate(s, &c0ip::ErrorReport::norm_iota_h);
      v.check(within(rt, 2.0, 0.15), "eta=" + fmt("%g", eta) + " rate " + fmt("%.3f", rt) + " in 2.00+-0.15");
    } else {
      v.check(recorded, "eta=" + fmt("%g", eta) + " factorization failed with recorded diagnostic \"" + diag + "\"");
    }
  }
  double previous = INFINITY;
  for (double eta : {1e4, 1e6}) {
    const auto s = r.series(1e-8, eta);
    bool finite = !s.empty();
    for (const auto* row : s) finite = finite && row->success && std::isfinite(row->errors.norm_iota_h);
    const double rt = finest_rate(s, &c0ip::ErrorReport::norm_iota_h);
    v.check(finite, "eta=" + fmt("%g", eta) + " errors finite");
    v.check(rt > 0.85 && rt < 1.5 && rt <= previous,
            "eta=" + fmt("%g", eta) + " rate " + fmt("%.3f", rt) + " degraded toward 1");
    previous = rt;
  }
  return report(3, v);
}

int criterion4() {
  Verdict v;
  double worst = 0.0;
  for (int n : {1, 2}) {
    for (double iota : {0.0, 1e-8, 1e-4, 1.0}) {
      for (double eta : {1e-4, 1.0, 10.0, 1e4}) {
        const Eigen::MatrixXd dense = oracle::brute_force_forms(oracle::unit_square(n), iota, eta).system();
        const c0ip::HermiteSpace s(c0ip::build_structured_mesh(n));
        const Eigen::MatrixXd sparse(c0ip::assemble(s, iota, eta, [](const Point&) { return 0.0; }).matrix);
        if (dense.rows() != sparse.rows()) {
          worst = INFINITY;
          continue;
        }
        worst = std::max(worst, (dense - sparse).cwiseAbs().maxCoeff() / sparse.cwiseAbs().maxCoeff());
      }
    }
  }
  v.check(worst < 1e-10, "max relative difference " + fmt("%.2e", worst) + " < 1e-10 over 32 cases");
  return report(4, v);
}

int criterion5() {
  Verdict v;
  const c0ip::HermiteSpace s(c0ip::build_structured_mesh(4));
  for (double iota : {1.0, 1e-2, 1e-4, 1e-6, 0.0}) {
    const auto p = c0ip::example1(iota);
    std::vector<double> res;
    for (int degree : {12, 16, 20}) {
      c0ip::QuadratureConfig q;
      q.error = degree;
      q.edge_points = degree / 2 + 1;
      res.push_back(c0ip::galerkin_residual(s, p.exact->as_jet_field(), p.load, iota, 10.0, q)
                        .cwiseAbs()
                        .maxCoeff());
    }
    v.check(res[0] < 1e-6, "iota=" + fmt("%g", iota) + " degree-12 residual " + fmt("%.3e", res[0]) + " < 1e-6");
    v.check(res[2] < res[0], "iota=" + fmt("%g", iota) + " decreases to " + fmt("%.3e", res[2]) + " at degree 20");
  }
  return report(5, v);
}

// triangle of x in the structured n x n mesh
int locate(int n, const Point& x) {
  const int i = std::min(n - 1, static_cast<int>(x.x() * n)), j = std::min(n - 1, static_cast<int>(x.y() * n));
  return 2 * (j * n + i) + (x.y() * n - j > x.x() * n - i ? 1 : 0);
}

int criterion6() {
  Verdict v;
  double asym = 0.0;
  for (int n : {4, 16, 64}) {
    const c0ip::HermiteSpace s(c0ip::build_structured_mesh(n));
    for (double iota : c0ip::default_iotas(StudyExample::Example1)) {
      const auto m = c0ip::assemble(s, iota, 10.0, [](const Point&) { return 0.0; }).matrix;
      const Eigen::SparseMatrix<double> d = m - Eigen::SparseMatrix<double>(m.transpose());
      double dmax = 0.0, mmax = 0.0;
      for (int k = 0; k < d.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(d, k); it; ++it) dmax = std::max(dmax, std::abs(it.value()));
      for (int k = 0; k < m.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it) mmax = std::max(mmax, std::abs(it.value()));
      asym = std::max(asym, dmax / mmax);
    }
  }
  v.check(asym < 1e-12, "symmetry " + fmt("%.1e", asym) + " < 1e-12");

  bool spd = !example1_result.rows.empty();
  for (const auto& row : example1_result.rows) spd = spd && row.factorization_ok;
  v.check(spd, "Cholesky succeeded for every study iota and n at eta=10");

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double nodal = 0.0;
  for (int k = 0; k < 100; ++k) {
    std::array<Point, 3> tri;
    double area = 0.0;
    do {
      for (auto& p : tri) p = Point(u(rng), u(rng));
      area = 0.5 * ((tri[1] - tri[0]).x() * (tri[2] - tri[0]).y() - (tri[1] - tri[0]).y() * (tri[2] - tri[0]).x());
      if (area < 0) std::swap(tri[1], tri[2]);
    } while (std::abs(area) < 0.05);
    const c0ip::HermiteBasis b(tri);
    const Point z = (tri[0] + tri[1] + tri[2]) / 3.0;
    for (int i = 0; i < 10; ++i) {
      std::array<double, 10> dof{};
      for (int c = 0; c < 3; ++c) {
        const auto j = b.eval(tri[c], 1)[i];
        dof[c] = j.value;
        dof[3 + 2 * c] = j.grad.x();
        dof[4 + 2 * c] = j.grad.y();
      }
      dof[9] = b.eval(z, 0)[i].value;
      for (int j = 0; j < 10; ++j) nodal = std::max(nodal, std::abs(dof[j] - (i == j)));
    }
  }
  v.check(nodal < 1e-10, "nodal property " + fmt("%.1e", nodal) + " < 1e-10 on 100 random triangles");

  const int n = 8;
  const auto space = std::make_shared<const c0ip::HermiteSpace>(c0ip::build_structured_mesh(n));
  std::normal_distribution<double> g;
  Eigen::VectorXd x(space->dofs().num_free());
  for (int i = 0; i < x.size(); ++i) x(i) = g(rng);
  const auto vh = c0ip::DiscreteFunction::from_free(space, x);
  const auto ivh = c0ip::quasi_interpolate(space, [&](const Point& p) { return vh.eval(locate(n, p), p, 0).value; });
  const double id = (ivh.coefficients() - vh.coefficients()).cwiseAbs().maxCoeff();
  v.check(id < 1e-10, "I_h identity on V_h " + fmt("%.1e", id) + " < 1e-10");

  const auto f = c0ip::example1(0.0).load;
  std::vector<double> osc;
  for (int m : {4, 8, 16, 32, 64}) osc.push_back(c0ip::oscillation(f, c0ip::build_structured_mesh(m)));
  const double rt = *c0ip::rate(osc[3], osc[4]);
  v.check(within(rt, 2.0, 0.1), "Osc_h(f) rate " + fmt("%.3f", rt) + " in 2.00+-0.10");
  return report(6, v);
}

int criterion7() {
  Verdict v;
  const auto w = c0ip::separable_field(c0ip::sin3_derivative);
  std::vector<c0ip::ErrorReport> e;
  for (int n : {4, 8, 16, 32}) {
    const auto s = std::make_shared<const c0ip::HermiteSpace>(c0ip::build_structured_mesh(n));
    e.push_back(c0ip::error_norms(c0ip::quasi_interpolate(s, w.as_scalar_field()), w.as_jet_field(), 0.0));
  }
  for (std::size_t k = 1; k < e.size(); ++k) {
    const double r2 = *c0ip::rate(e[k - 1].h2_broken, e[k].h2_broken);
    const double r3 = *c0ip::rate(e[k - 1].h3_broken, e[k].h3_broken);
    const std::string pair = std::to_string(4 << (k - 1)) + "->" + std::to_string(4 << k);
    v.check(within(r2, 2.0, 0.2), pair + " |.|_2,h rate " + fmt("%.3f", r2));
    v.check(within(r3, 1.0, 0.2), pair + " |.|_3,h rate " + fmt("%.3f", r3));
  }
  return report(7, v);
}

}  // namespace

int main() {
  int failed = 0;
  failed += criterion1();
  failed += criterion2();
  failed += criterion3();
  failed += criterion4();
  failed += criterion5();
  failed += criterion6();
  failed += criterion7();
  std::printf("%d of 7 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
