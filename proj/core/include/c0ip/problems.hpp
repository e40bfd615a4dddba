#pragma once

#include <functional>
#include <optional>
#include <string>

#include "c0ip/field.hpp"

namespace c0ip {

/// Smooth field given by its mixed partials d^{a+b}/dx^a dy^b.
class AnalyticField {
 public:
  using Partial = std::function<double(int a, int b, const Point&)>;

  explicit AnalyticField(Partial partial, int max_order = 6)
      : partial_(std::move(partial)), max_order_(max_order) {}

  double partial(int a, int b, const Point& x) const { return partial_(a, b, x); }
  double value(const Point& x) const { return partial_(0, 0, x); }
  int max_order() const { return max_order_; }
  Jet jet(const Point& x) const;

  JetField as_jet_field() const;
  ScalarField as_scalar_field() const;

 private:
  Partial partial_;
  int max_order_;
};

/// Field of the form g(x) g(y) given by the 1D derivatives g^{(k)}.
AnalyticField separable_field(std::function<double(int k, double s)> g, int max_order = 6);

/// Manufactured problem on the unit square. `exact` is the solution of the
/// sixth-order problem when known; `reference` is the reduced (biharmonic)
/// solution errors are reported against when the exact one is unknown.
struct ManufacturedProblem {
  std::string name;
  double iota = 0.0;
  std::optional<AnalyticField> exact;
  std::optional<AnalyticField> reference;
  ScalarField load;
  std::string notes;

  /// Field errors are measured against: exact if present, else reference.
  const AnalyticField* comparison() const {
    return exact ? &*exact : reference ? &*reference : nullptr;
  }
};

/// k-th derivative of sin^3(pi s), via sin^3 u = (3 sin u - sin 3u) / 4.
double sin3_derivative(int k, double s);
/// k-th derivative of sin^2(pi s), via sin^2 u = (1 - cos 2u) / 2.
double sin2_derivative(int k, double s);

/// w = sin^3(pi x) sin^3(pi y), f = Laplace^2 w - iota^2 Laplace^3 w.
ManufacturedProblem example1(double iota);

/// w0 = sin^2(pi x) sin^2(pi y), f = Laplace^2 w0 (independent of iota).
/// The sixth-order solution is unknown and has boundary layers.
ManufacturedProblem example2();

/// User-supplied load with an optional exact solution.
ManufacturedProblem custom_problem(std::string name, double iota, ScalarField load,
                                   std::optional<AnalyticField> exact = std::nullopt);

/// Laplace^2 u and Laplace^3 u from the partials of u.
double bilaplacian(const AnalyticField& u, const Point& x);
double trilaplacian(const AnalyticField& u, const Point& x);

}  // namespace c0ip
