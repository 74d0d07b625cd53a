#include "foldfem/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace foldfem {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    // Newton on P_n starting from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    // Map [-1, 1] -> [0, 1], ascending.
    nodes[n - 1 - i] = 0.5 * (x + 1.0);
    weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
}

QuadratureRule triangle_quadrature(int degree) {
  if (degree < 0 || degree > kMaxQuadratureDegree)
    throw ConfigError("unsupported triangle quadrature degree " + std::to_string(degree));
  // Duffy collapse (u, v) -> (u, (1 - u) v) with Jacobian (1 - u).
  const int nu = (degree + 3) / 2;
  const int nv = (degree + 2) / 2;
  std::vector<double> xu, wu, xv, wv;
  gauss_legendre(nu, xu, wu);
  gauss_legendre(nv, xv, wv);
  QuadratureRule rule;
  rule.degree = degree;
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nv; ++j) {
      const double u = xu[i];
      rule.points.push_back({u, (1.0 - u) * xv[j]});
      rule.weights.push_back(wu[i] * wv[j] * (1.0 - u));
    }
  }
  return rule;
}

EdgeQuadratureRule edge_quadrature(int degree) {
  if (degree < 0 || degree > kMaxQuadratureDegree)
    throw ConfigError("unsupported edge quadrature degree " + std::to_string(degree));
  EdgeQuadratureRule rule;
  rule.degree = degree;
  gauss_legendre((degree + 2) / 2, rule.points, rule.weights);
  return rule;
}

}  // namespace foldfem
