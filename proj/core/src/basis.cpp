#include "foldfem/basis.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

namespace foldfem {

Jet& Jet::operator+=(const Jet& o) {
  value += o.value;
  for (int i = 0; i < 2; ++i) d1[i] += o.d1[i];
  for (int i = 0; i < 3; ++i) d2[i] += o.d2[i];
  for (int i = 0; i < 4; ++i) d3[i] += o.d3[i];
  for (int i = 0; i < 5; ++i) d4[i] += o.d4[i];
  return *this;
}

Jet operator*(double s, Jet j) {
  j.value *= s;
  for (auto& v : j.d1) v *= s;
  for (auto& v : j.d2) v *= s;
  for (auto& v : j.d3) v *= s;
  for (auto& v : j.d4) v *= s;
  return j;
}

LagrangeBasis::LagrangeBasis(int k) : k_(k) {
  if (k < 1 || k > 4) throw ConfigError("Lagrange degree must be in [1, 4], got " + std::to_string(k));
  for (int j = 0; j <= k; ++j) {
    for (int i = 0; i + j <= k; ++i) nodes_.push_back({static_cast<double>(i) / k, static_cast<double>(j) / k});
  }
  for (int p = 0; p <= k; ++p) {
    for (int b = 0; b <= p; ++b) exponents_.push_back({p - b, b});
  }
  const int n = size();
  Eigen::MatrixXd vandermonde(n, n);
  for (int r = 0; r < n; ++r) {
    for (int m = 0; m < n; ++m) {
      vandermonde(r, m) = std::pow(nodes_[r].x, exponents_[m][0]) * std::pow(nodes_[r].y, exponents_[m][1]);
    }
  }
  // Column i of V^{-1} holds the monomial coefficients of basis function i.
  const Eigen::MatrixXd inv = vandermonde.fullPivLu().inverse();
  coeffs_.resize(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    for (int m = 0; m < n; ++m) coeffs_[i * n + m] = inv(m, i);
  }
}

void LagrangeBasis::evaluate(Point xi, int max_order, std::span<Jet> out) const {
  if (max_order < 0 || max_order > kMaxDerivativeOrder)
    throw ConfigError("derivative order " + std::to_string(max_order) + " is not supported (max 4)");
  const int n = size();
  // falling[p][a] = a!/(a-p)! * x^(a-p)
  std::array<std::array<double, 5>, 5> fx{}, fy{};
  for (int a = 0; a <= k_; ++a) {
    for (int p = 0; p <= a; ++p) {
      double cx = 1.0;
      for (int r = 0; r < p; ++r) cx *= (a - r);
      fx[p][a] = cx * std::pow(xi.x, a - p);
      fy[p][a] = cx * std::pow(xi.y, a - p);
    }
  }
  auto deriv = [&](int i, int px, int py) {
    double s = 0.0;
    for (int m = 0; m < n; ++m) {
      const auto [a, b] = exponents_[m];
      if (a < px || b < py) continue;
      s += coeffs_[i * n + m] * fx[px][a] * fy[py][b];
    }
    return s;
  };
  for (int i = 0; i < n; ++i) {
    Jet& j = out[i];
    j = Jet{};
    j.value = deriv(i, 0, 0);
    if (max_order >= 1) for (int q = 0; q <= 1; ++q) j.d1[q] = deriv(i, 1 - q, q);
    if (max_order >= 2) for (int q = 0; q <= 2; ++q) j.d2[q] = deriv(i, 2 - q, q);
    if (max_order >= 3) for (int q = 0; q <= 3; ++q) j.d3[q] = deriv(i, 3 - q, q);
    if (max_order >= 4) for (int q = 0; q <= 4; ++q) j.d4[q] = deriv(i, 4 - q, q);
  }
}

std::vector<Jet> LagrangeBasis::evaluate(Point xi, int max_order) const {
  std::vector<Jet> out(size());
  evaluate(xi, max_order, out);
  return out;
}

std::vector<Jet> reference_basis(int k, std::array<double, 3> barycentric, int max_order) {
  return LagrangeBasis(k).evaluate({barycentric[1], barycentric[2]}, max_order);
}

namespace {

// Coefficients of prod_{f in factors} (f[0] d_xi + f[1] d_eta), indexed by the
// power of d_eta.
template <std::size_t M>
std::array<double, M + 1> expand(const std::array<std::array<double, 2>, M>& factors) {
  std::array<double, M + 1> poly{};
  poly[0] = 1.0;
  for (std::size_t f = 0; f < M; ++f) {
    std::array<double, M + 1> next{};
    for (std::size_t r = 0; r <= f; ++r) {
      next[r] += poly[r] * factors[f][0];
      next[r + 1] += poly[r] * factors[f][1];
    }
    poly = next;
  }
  return poly;
}

template <std::size_t M>
void fill(std::array<double, (M + 1) * (M + 1)>& table, const std::array<std::array<double, 2>, 2>& a) {
  // d/dx_i = sum_a A[a][i] d/dxi_a; column i of A is the linear form for x_i.
  const std::array<double, 2> lx{a[0][0], a[1][0]};
  const std::array<double, 2> ly{a[0][1], a[1][1]};
  for (std::size_t q = 0; q <= M; ++q) {
    std::array<std::array<double, 2>, M> factors{};
    for (std::size_t f = 0; f < M; ++f) factors[f] = f < M - q ? lx : ly;
    const auto poly = expand<M>(factors);
    for (std::size_t r = 0; r <= M; ++r) table[q * (M + 1) + r] = poly[r];
  }
}

template <std::size_t N>
std::array<double, N> mul(const std::array<double, N * N>& t, const std::array<double, N>& v) {
  std::array<double, N> out{};
  for (std::size_t q = 0; q < N; ++q) {
    double s = 0.0;
    for (std::size_t r = 0; r < N; ++r) s += t[q * N + r] * v[r];
    out[q] = s;
  }
  return out;
}

}  // namespace

JetTransform::JetTransform(const std::array<std::array<double, 2>, 2>& a) {
  fill<1>(t1_, a);
  fill<2>(t2_, a);
  fill<3>(t3_, a);
  fill<4>(t4_, a);
}

Jet JetTransform::apply(const Jet& ref, int max_order) const {
  Jet out;
  out.value = ref.value;
  if (max_order >= 1) out.d1 = mul<2>(t1_, ref.d1);
  if (max_order >= 2) out.d2 = mul<3>(t2_, ref.d2);
  if (max_order >= 3) out.d3 = mul<4>(t3_, ref.d3);
  if (max_order >= 4) out.d4 = mul<5>(t4_, ref.d4);
  return out;
}

}  // namespace foldfem
