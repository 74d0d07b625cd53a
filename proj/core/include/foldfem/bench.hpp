#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "foldfem/mesh.hpp"
#include "foldfem/problem.hpp"

namespace foldfem {

struct BenchmarkCase {
  std::string name;
  ProblemSpec problem;
  Penalties penalties;
  Domain domain = Domain::UnitSquare;
  int initial_n = 4;
  /// Expected log-log slope of eta_tot against DoFs for k = 2 adaptive runs.
  std::optional<double> reference_dof_slope;

  Mesh initial_mesh() const { return initial_mesh(initial_n); }
  Mesh initial_mesh(int n) const;
};

/// Right branch of the flat-fold solution, u(t) = (t^3/2 - t^2 + t) e^t,
/// and its first four derivatives.
std::array<double, 5> flat_fold_profile(double t);

/// Omega = (0,1)^2 folded along x1 = 1/2 with a closed-form solution; pure
/// Dirichlet; gamma 30.
BenchmarkCase case_flat_fold();

/// Omega = (0,1)^2 with a V-shaped fold through (1/2, 1/2); clamped on
/// x2 = 1 (corner-touching edges included), u = 1 at (1/2, 0), free
/// elsewhere; f = 0; gamma 70.
BenchmarkCase case_v_fold();

/// L-shaped domain (-1,1)^2 minus (0,1)^2 with a sinusoidal fold; g and Phi
/// on the whole boundary; f = 0; gamma 50.
BenchmarkCase case_l_shape();

/// Throws ConfigError for unknown names.
BenchmarkCase case_by_name(const std::string& name);
std::vector<std::string> case_names();

/// Case with a given exact solution: g and Phi are its traces on the
/// Dirichlet part of the boundary, f is supplied by the caller.
BenchmarkCase manufactured_case(std::string name, Domain domain, int n, std::shared_ptr<const FoldCurve> fold,
                                ExactSolution exact, ScalarField f, Penalties pen = {},
                                BoundaryClassifier dirichlet = {});

/// The fold curves used by the three cases.
std::shared_ptr<const FoldCurve> flat_fold_curve();
std::shared_ptr<const FoldCurve> v_fold_curve();
std::shared_ptr<const FoldCurve> l_shape_fold_curve();

}  // namespace foldfem
