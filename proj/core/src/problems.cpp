#include "c0ip/problems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace c0ip {

namespace {

constexpr double kPi = std::numbers::pi;

// d^k/du^k sin(u) = sin(u + k pi / 2), evaluated without the phase shift
double sin_shift(int k, double u) {
  switch (k % 4) {
    case 0: return std::sin(u);
    case 1: return std::cos(u);
    case 2: return -std::sin(u);
    default: return -std::cos(u);
  }
}

double cos_shift(int k, double u) { return sin_shift(k + 1, u); }

}  // namespace

Jet AnalyticField::jet(const Point& x) const {
  Jet j;
  j.value = partial(0, 0, x);
  j.grad = Eigen::Vector2d(partial(1, 0, x), partial(0, 1, x));
  j.hess = {partial(2, 0, x), partial(1, 1, x), partial(0, 2, x)};
  j.third = {partial(3, 0, x), partial(2, 1, x), partial(1, 2, x), partial(0, 3, x)};
  return j;
}

JetField AnalyticField::as_jet_field() const {
  return [self = *this](const Point& x) { return self.jet(x); };
}

ScalarField AnalyticField::as_scalar_field() const {
  return [self = *this](const Point& x) { return self.value(x); };
}

AnalyticField separable_field(std::function<double(int k, double s)> g, int max_order) {
  return AnalyticField(
      [g = std::move(g)](int a, int b, const Point& x) { return g(a, x.x()) * g(b, x.y()); },
      max_order);
}

double sin3_derivative(int k, double s) {
  const double u = kPi * s;
  return 0.25 * (3.0 * std::pow(kPi, k) * sin_shift(k, u) -
                 std::pow(3.0 * kPi, k) * sin_shift(k, 3.0 * u));
}

double sin2_derivative(int k, double s) {
  const double u = 2.0 * kPi * s;
  if (k == 0) return 0.5 * (1.0 - std::cos(u));
  return -0.5 * std::pow(2.0 * kPi, k) * cos_shift(k, u);
}

double bilaplacian(const AnalyticField& u, const Point& x) {
  return u.partial(4, 0, x) + 2.0 * u.partial(2, 2, x) + u.partial(0, 4, x);
}

double trilaplacian(const AnalyticField& u, const Point& x) {
  return u.partial(6, 0, x) + 3.0 * u.partial(4, 2, x) + 3.0 * u.partial(2, 4, x) +
         u.partial(0, 6, x);
}

ManufacturedProblem example1(double iota) {
  if (!(iota >= 0.0)) throw std::invalid_argument("iota must be non-negative");
  ManufacturedProblem p;
  p.name = "example1";
  p.iota = iota;
  p.exact = separable_field(sin3_derivative);
  const double i2 = iota * iota;
  p.load = [w = *p.exact, i2](const Point& x) {
    return bilaplacian(w, x) - i2 * trilaplacian(w, x);
  };
  p.notes = "w = sin^3(pi x) sin^3(pi y); w, d_n w, d_nn w vanish on the boundary";
  return p;
}

ManufacturedProblem example2() {
  ManufacturedProblem p;
  p.name = "example2";
  p.reference = separable_field(sin2_derivative);
  p.load = [w0 = *p.reference](const Point& x) { return bilaplacian(w0, x); };
  p.notes = "w0 = sin^2(pi x) sin^2(pi y) solves the clamped biharmonic problem; "
            "the sixth-order solution has boundary layers and is not known";
  return p;
}

ManufacturedProblem custom_problem(std::string name, double iota, ScalarField load,
                                   std::optional<AnalyticField> exact) {
  if (!load) throw std::invalid_argument("custom problem needs a load");
  ManufacturedProblem p;
  p.name = std::move(name);
  p.iota = iota;
  p.load = std::move(load);
  p.exact = std::move(exact);
  return p;
}

}  // namespace c0ip
