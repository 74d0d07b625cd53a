#pragma once

#include <array>
#include <vector>

#include "foldfem/geometry.hpp"

namespace foldfem {

/// Rule on the reference triangle {(xi, eta) : xi, eta >= 0, xi + eta <= 1}.
struct QuadratureRule {
  int degree = 0;
  std::vector<Point> points;  // reference coordinates (xi, eta)
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
  /// Barycentric coordinates (1 - xi - eta, xi, eta) of point q.
  std::array<double, 3> barycentric(std::size_t q) const {
    return {1.0 - points[q].x - points[q].y, points[q].x, points[q].y};
  }
};

/// Rule on the reference edge [0, 1].
struct EdgeQuadratureRule {
  int degree = 0;
  std::vector<double> points;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
};

inline constexpr int kMaxQuadratureDegree = 20;

/// Collapsed Gauss-Legendre rule exact for polynomials of total degree <= d.
/// Throws ConfigError for d outside [0, 20].
QuadratureRule triangle_quadrature(int degree);

/// Gauss-Legendre rule on [0, 1] exact for polynomials of degree <= d.
EdgeQuadratureRule edge_quadrature(int degree);

/// n-point Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace foldfem
