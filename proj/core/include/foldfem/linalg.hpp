#pragma once

#include <Eigen/SparseCore>
#include <span>
#include <vector>

#include "foldfem/geometry.hpp"

namespace foldfem {

/// Raised when a factorization or CG detects a non-positive pivot/curvature;
/// for the DG system this means the penalties are too small.
class IndefiniteMatrixError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Symmetric sparse matrix, both triangles stored.
class SparseSym {
 public:
  using Storage = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;
  using Triplet = Eigen::Triplet<double, int>;

  SparseSym() = default;
  /// Duplicate entries are summed in triplet order.
  SparseSym(int dim, std::span<const Triplet> triplets);
  explicit SparseSym(Storage m) : m_(std::move(m)) { m_.makeCompressed(); }

  int dim() const { return static_cast<int>(m_.rows()); }
  const Storage& storage() const { return m_; }
  Storage& storage() { return m_; }

  std::vector<double> multiply(std::span<const double> x) const;
  double quadratic_form(std::span<const double> x) const;
  double max_abs() const;
  /// max |A - A^T| over all entries.
  double asymmetry() const;

 private:
  Storage m_;
};

enum class SolveMethod { Auto, Direct, Cg };

struct SolveOptions {
  double tolerance = 1e-10;  // equilibrated relative residual, in (0, 1e-4]
  SolveMethod method = SolveMethod::Auto;
  int block_size = 1;      // CG preconditioner block (dofs per element)
  int direct_limit = 50000;  // Auto uses the direct solver below this dimension
};

struct SolveReport {
  std::vector<double> solution;
  double relative_residual = 0.0;  // equilibrated, see relative_residual()
  double unscaled_residual = 0.0;  // |b - A x| / |b|
  int iterations = 0;  // 0 for the direct solver
  SolveMethod method = SolveMethod::Direct;
};

/// Solves A x = b for symmetric positive definite A.
/// Throws IndefiniteMatrixError on a non-positive pivot or curvature, and
/// NumericalError when the tolerance cannot be met within the budget
/// (direct: after iterative refinement; CG: 50 sqrt(n) iterations).
SolveReport solve_spd(const SparseSym& a, std::span<const double> b, const SolveOptions& options = {});

/// |S (b - A x)| / |S b| with S = diag(A)^{-1/2}, i.e. the relative residual
/// of the Jacobi-equilibrated system. Residuals are accumulated in extended
/// precision. Throws IndefiniteMatrixError on a non-positive diagonal.
double relative_residual(const SparseSym& a, std::span<const double> x, std::span<const double> b);

/// Plain |b - A x| / |b|. On strongly graded meshes this bottoms out near
/// eps |A| |x| / |b| no matter how accurate x is.
double unscaled_relative_residual(const SparseSym& a, std::span<const double> x, std::span<const double> b);

}  // namespace foldfem
