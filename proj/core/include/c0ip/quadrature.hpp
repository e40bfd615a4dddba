#pragma once

#include <vector>

#include <Eigen/Core>

namespace c0ip {

/// Rule on the reference triangle {xi, eta >= 0, xi + eta <= 1}.
/// Weights sum to 1/2 (the reference area).
struct TriangleRule {
  std::vector<Eigen::Vector2d> points;
  std::vector<double> weights;
  int degree = 0;

  std::size_t size() const { return weights.size(); }
};

/// Rule on [0, 1]; weights sum to 1.
struct LineRule {
  std::vector<double> points;
  std::vector<double> weights;
  int degree = 0;

  std::size_t size() const { return weights.size(); }
};

inline constexpr int kMaxTriangleDegree = 40;

/// Gauss-Legendre with `points` nodes on [0, 1], exact through degree 2p-1.
/// Throws std::invalid_argument for points < 1 or > 64.
LineRule gauss_legendre(int points);

/// Edge rule, same as gauss_legendre.
inline LineRule edge_rule(int points) { return gauss_legendre(points); }

/// Collapsed (Duffy) Gauss product rule exact for total degree <= degree.
/// All weights positive, all points strictly interior.
/// Throws std::invalid_argument for degree outside [0, kMaxTriangleDegree].
TriangleRule triangle_rule(int degree);

}  // namespace c0ip
