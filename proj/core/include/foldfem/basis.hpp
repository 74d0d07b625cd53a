#pragma once

#include <array>
#include <span>
#include <vector>

#include "foldfem/geometry.hpp"

namespace foldfem {

/// Derivatives of a scalar function through order four at one point.
///
/// Symmetric tensors are stored compactly: entry q of the order-m array is
/// the derivative with m - q differentiations in the first coordinate and q
/// in the second, so index permutations map to the same entry.
struct Jet {
  double value = 0.0;
  std::array<double, 2> d1{};
  std::array<double, 3> d2{};
  std::array<double, 4> d3{};
  std::array<double, 5> d4{};

  Vec2 gradient() const { return {d1[0], d1[1]}; }
  double hessian(int i, int j) const { return d2[i + j]; }
  double third(int i, int j, int k) const { return d3[i + j + k]; }
  double fourth(int i, int j, int k, int l) const { return d4[i + j + k + l]; }

  double laplacian() const { return d2[0] + d2[2]; }
  Vec2 grad_laplacian() const { return {d3[0] + d3[2], d3[1] + d3[3]}; }
  double bilaplacian() const { return d4[0] + 2.0 * d4[2] + d4[4]; }

  /// Hessian times n, i.e. the normal derivative of the gradient.
  Vec2 hessian_times(Vec2 n) const { return {d2[0] * n.x + d2[1] * n.y, d2[1] * n.x + d2[2] * n.y}; }

  Jet& operator+=(const Jet& o);
  friend Jet operator*(double s, Jet j);
};

/// Frobenius product D^2 a : D^2 b.
inline double hessian_product(const Jet& a, const Jet& b) {
  return a.d2[0] * b.d2[0] + 2.0 * a.d2[1] * b.d2[1] + a.d2[2] * b.d2[2];
}

inline constexpr int kMaxDerivativeOrder = 4;

/// Nodal Lagrange basis of degree k on the principal lattice of the
/// reference triangle, nodes (i/k, j/k) ordered by j then i. Each basis
/// function is stored as monomial coefficients so derivatives are exact.
class LagrangeBasis {
 public:
  explicit LagrangeBasis(int k);

  int degree() const { return k_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  std::span<const Point> nodes() const { return nodes_; }

  /// Reference derivatives of every basis function at xi, through max_order.
  void evaluate(Point xi, int max_order, std::span<Jet> out) const;
  std::vector<Jet> evaluate(Point xi, int max_order) const;

 private:
  int k_;
  std::vector<Point> nodes_;
  std::vector<std::array<int, 2>> exponents_;  // monomial xi^a eta^b
  std::vector<double> coeffs_;                 // [function][monomial]
};

/// reference_basis in the functional form: every basis function's jet at the
/// barycentric point (l0, l1, l2). Throws ConfigError for max_order > 4.
std::vector<Jet> reference_basis(int k, std::array<double, 3> barycentric, int max_order);

/// Chain-rule transform of reference-coordinate jets under an affine map with
/// inverse Jacobian A (A[a][i] = d xi_a / d x_i).
class JetTransform {
 public:
  JetTransform() = default;
  explicit JetTransform(const std::array<std::array<double, 2>, 2>& inverse_jacobian);

  Jet apply(const Jet& ref, int max_order) const;

 private:
  // Row q of order m holds the coefficients of reference entry r.
  std::array<double, 4> t1_{};
  std::array<double, 9> t2_{};
  std::array<double, 16> t3_{};
  std::array<double, 25> t4_{};
};

}  // namespace foldfem
