#include "foldfem/linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace foldfem {

namespace {

using Vector = Eigen::VectorXd;
using ConstMap = Eigen::Map<const Vector>;

double norm2(std::span<const double> v) { return ConstMap(v.data(), static_cast<Eigen::Index>(v.size())).norm(); }

}  // namespace

SparseSym::SparseSym(int dim, std::span<const Triplet> triplets) : m_(dim, dim) {
  m_.setFromTriplets(triplets.begin(), triplets.end());
  m_.makeCompressed();
}

std::vector<double> SparseSym::multiply(std::span<const double> x) const {
  std::vector<double> y(dim());
  Eigen::Map<Vector>(y.data(), dim()) = m_ * ConstMap(x.data(), dim());
  return y;
}

double SparseSym::quadratic_form(std::span<const double> x) const {
  const ConstMap v(x.data(), dim());
  return v.dot(m_ * v);
}

double SparseSym::max_abs() const {
  double m = 0.0;
  for (int k = 0; k < m_.outerSize(); ++k) {
    for (Storage::InnerIterator it(m_, k); it; ++it) m = std::max(m, std::abs(it.value()));
  }
  return m;
}

double SparseSym::asymmetry() const {
  const Storage diff = m_ - Storage(m_.transpose());
  double m = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k) {
    for (Storage::InnerIterator it(diff, k); it; ++it) m = std::max(m, std::abs(it.value()));
  }
  return m;
}

namespace {

// b - A x accumulated in extended precision; the penalty entries make
// |A||x| much larger than |b|, so a double residual bottoms out early.
Vector extended_residual(const SparseSym& a, const double* x, const double* b) {
  const int n = a.dim();
  std::vector<long double> acc(b, b + n);
  const auto& m = a.storage();
  for (int col = 0; col < m.outerSize(); ++col) {
    const long double xc = x[col];
    for (SparseSym::Storage::InnerIterator it(m, col); it; ++it)
      acc[it.row()] -= static_cast<long double>(it.value()) * xc;
  }
  Vector r(n);
  for (int i = 0; i < n; ++i) r[i] = static_cast<double>(acc[i]);
  return r;
}

// diag(A)^{-1/2}; the residual is measured in this equilibrated norm.
Vector jacobi_scaling(const SparseSym& a) {
  const Vector d = a.storage().diagonal();
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (!(d[i] > 0.0)) throw IndefiniteMatrixError("non-positive diagonal entry (penalty too small?)");
  }
  return d.cwiseSqrt().cwiseInverse();
}

double scaled_ratio(const Vector& s, const Vector& r, const Vector& b) {
  const double nb = s.cwiseProduct(b).norm();
  const double nr = s.cwiseProduct(r).norm();
  return nb > 0.0 ? nr / nb : nr;
}

}  // namespace

double relative_residual(const SparseSym& a, std::span<const double> x, std::span<const double> b) {
  const Vector r = extended_residual(a, x.data(), b.data());
  return scaled_ratio(jacobi_scaling(a), r, ConstMap(b.data(), a.dim()));
}

double unscaled_relative_residual(const SparseSym& a, std::span<const double> x, std::span<const double> b) {
  const double nb = norm2(b);
  const Vector r = extended_residual(a, x.data(), b.data());
  return nb > 0.0 ? r.norm() / nb : r.norm();
}

namespace {

SolveReport solve_direct(const SparseSym& a, const Vector& b, double tol) {
  Eigen::SimplicialLDLT<SparseSym::Storage, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt;
  ldlt.compute(a.storage());
  if (ldlt.info() != Eigen::Success) throw IndefiniteMatrixError("LDL^T factorization broke down");
  const Vector d = ldlt.vectorD();
  const double dmax = d.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (!(d[i] > 1e-14 * dmax))
      throw IndefiniteMatrixError("non-positive pivot in LDL^T factorization (penalty too small?)");
  }
  Vector x = ldlt.solve(b);
  const Vector scale = jacobi_scaling(a);
  double rel = 0.0;
  for (int refine = 0; refine <= 5; ++refine) {
    const Vector r = extended_residual(a, x.data(), b.data());
    rel = scaled_ratio(scale, r, b);
    if (rel <= tol) break;
    x += ldlt.solve(r);
  }
  if (!(rel <= tol)) {
    char msg[96];
    std::snprintf(msg, sizeof msg, "direct solve reached relative residual %.3e > tolerance %.3e", rel, tol);
    throw NumericalError(msg);
  }
  SolveReport report;
  report.solution.assign(x.data(), x.data() + x.size());
  report.relative_residual = rel;
  report.unscaled_residual = extended_residual(a, x.data(), b.data()).norm() / b.norm();
  report.method = SolveMethod::Direct;
  return report;
}

SolveReport solve_cg(const SparseSym& a, const Vector& b, double tol, int block) {
  const int n = a.dim();
  if (block < 1 || n % block != 0) throw ConfigError("CG block size does not divide the dimension");
  // Block-Jacobi preconditioner: Cholesky of each diagonal block.
  const int nblocks = n / block;
  std::vector<Eigen::LLT<Eigen::MatrixXd>> factors(nblocks);
  {
    const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(block, block);
    std::vector<Eigen::MatrixXd> blocks(nblocks, zero);
    const auto& m = a.storage();
    for (int col = 0; col < n; ++col) {
      for (SparseSym::Storage::InnerIterator it(m, col); it; ++it) {
        const int row = static_cast<int>(it.row());
        if (row / block == col / block) blocks[col / block](row % block, col % block) = it.value();
      }
    }
    for (int k = 0; k < nblocks; ++k) {
      factors[k].compute(blocks[k]);
      if (factors[k].info() != Eigen::Success)
        throw IndefiniteMatrixError("diagonal block " + std::to_string(k) + " is not positive definite");
    }
  }
  auto precondition = [&](const Vector& r) {
    Vector z(n);
    for (int k = 0; k < nblocks; ++k) z.segment(k * block, block) = factors[k].solve(r.segment(k * block, block));
    return z;
  };

  const int max_iter = static_cast<int>(std::ceil(50.0 * std::sqrt(static_cast<double>(n))));
  const Vector scale = jacobi_scaling(a);
  Vector x = Vector::Zero(n);
  Vector r = b;
  Vector z = precondition(r);
  Vector p = z;
  double rz = r.dot(z);
  int it = 0;
  double rel = scaled_ratio(scale, r, b);
  while (rel > tol) {
    if (it >= max_iter)
      throw NumericalError("CG did not reach the tolerance within " + std::to_string(max_iter) + " iterations");
    const Vector q = a.storage() * p;
    const double curvature = p.dot(q);
    if (!(curvature > 0.0)) throw IndefiniteMatrixError("non-positive curvature in CG (penalty too small?)");
    const double alpha = rz / curvature;
    x += alpha * p;
    r -= alpha * q;
    ++it;
    rel = scaled_ratio(scale, r, b);
    if (rel <= tol) break;
    z = precondition(r);
    const double rz_next = r.dot(z);
    p = z + (rz_next / rz) * p;
    rz = rz_next;
  }
  // Recompute the true residual; recurrences drift.
  const Vector true_r = extended_residual(a, x.data(), b.data());
  rel = scaled_ratio(scale, true_r, b);
  if (!(rel <= tol)) throw NumericalError("CG residual drifted above the tolerance");
  SolveReport report;
  report.solution.assign(x.data(), x.data() + n);
  report.relative_residual = rel;
  report.unscaled_residual = true_r.norm() / b.norm();
  report.iterations = it;
  report.method = SolveMethod::Cg;
  return report;
}

}  // namespace

SolveReport solve_spd(const SparseSym& a, std::span<const double> b, const SolveOptions& options) {
  if (static_cast<int>(b.size()) != a.dim()) throw ConfigError("right-hand side size does not match the matrix");
  if (!(options.tolerance > 0.0 && options.tolerance <= 1e-4))
    throw ConfigError("solver tolerance must lie in (0, 1e-4]");
  const Vector rhs = ConstMap(b.data(), a.dim());
  if (rhs.norm() == 0.0) {
    SolveReport report;
    report.solution.assign(a.dim(), 0.0);
    return report;
  }
  SolveMethod method = options.method;
  if (method == SolveMethod::Auto) method = a.dim() < options.direct_limit ? SolveMethod::Direct : SolveMethod::Cg;
  if (method == SolveMethod::Direct) return solve_direct(a, rhs, options.tolerance);
  return solve_cg(a, rhs, options.tolerance, options.block_size);
}

}  // namespace foldfem
