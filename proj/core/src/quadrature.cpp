#include "c0ip/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace c0ip {

LineRule gauss_legendre(int points) {
  if (points < 1 || points > 64) {
    throw std::invalid_argument("unsupported Gauss point count " + std::to_string(points));
  }
  LineRule rule;
  rule.points.resize(points);
  rule.weights.resize(points);
  rule.degree = 2 * points - 1;
  const int n = points;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1.0;
      // derivative of P_n from P_n and P_{n-1}
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    if (n == 1) {
      x = 0.0;
      dp = 1.0;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // map [-1, 1] -> [0, 1]
    rule.points[i] = 0.5 * (1.0 - x);
    rule.points[n - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[i] = 0.5 * w;
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  return rule;
}

TriangleRule triangle_rule(int degree) {
  if (degree < 0 || degree > kMaxTriangleDegree) {
    throw std::invalid_argument("unsupported triangle quadrature degree " +
                                std::to_string(degree));
  }
  // A degree-d polynomial becomes degree d+1 in the collapsed direction
  // (Jacobian 1 - u) and degree d in the other.
  const int along = (degree + 3) / 2;
  const int across = (degree + 2) / 2;
  const LineRule gu = gauss_legendre(along);
  const LineRule gv = gauss_legendre(std::max(across, 1));
  TriangleRule rule;
  rule.degree = degree;
  rule.points.reserve(gu.size() * gv.size());
  rule.weights.reserve(gu.size() * gv.size());
  for (std::size_t i = 0; i < gu.size(); ++i) {
    const double u = gu.points[i];
    for (std::size_t j = 0; j < gv.size(); ++j) {
      const double v = gv.points[j];
      rule.points.emplace_back(u, v * (1.0 - u));
      rule.weights.push_back(gu.weights[i] * gv.weights[j] * (1.0 - u));
    }
  }
  return rule;
}

}  // namespace c0ip
