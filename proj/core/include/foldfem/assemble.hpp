#pragma once

#include <optional>
#include <span>
#include <vector>

#include "foldfem/linalg.hpp"
#include "foldfem/problem.hpp"
#include "foldfem/space.hpp"

namespace foldfem {

struct LinearSystem {
  SparseSym matrix;
  std::vector<double> rhs;
};

/// Interior penalty discretization of the folding problem.
///
/// Volume term D^2 u : D^2 v on every element. On interior, crease and
/// Dirichlet edges: the {d_n Laplace} consistency/symmetry pair against
/// value jumps and the gamma0 / h^3 value-jump penalty. On the same edges
/// minus the crease: the {d_n grad} pair against gradient jumps and the
/// gamma1 / h gradient-jump penalty. Neumann edges contribute nothing; g and
/// Phi enter only through the right-hand side.
LinearSystem assemble(const DgSpace& space, const ProblemSpec& prob, const Penalties& pen);

/// Symmetric penalty u(loc) = value on every element whose closure contains
/// loc. The default weight is gamma0 / h_T^3 of each containing element.
LinearSystem apply_point_constraint(LinearSystem sys, const DgSpace& space, Point loc, double value,
                                    std::optional<double> weight, const Penalties& pen);

/// Assembles, applies the problem's point constraints, and solves.
struct DiscreteSolution {
  std::vector<double> coeffs;
  SolveReport report;
};
DiscreteSolution solve_problem(const DgSpace& space, const ProblemSpec& prob, const Penalties& pen,
                               SolveOptions options = {});

/// DG norm: broken H^2 seminorm plus gamma0/h^3 value jumps on interior,
/// crease and Dirichlet edges plus gamma1/h gradient jumps on the same edges
/// minus the crease. On Dirichlet edges the jump is the trace itself.
double dg_norm(const DgSpace& space, const Penalties& pen, std::span<const double> coeffs);

/// DG norm of u - u_h with u = prob.exact (traces taken per subdomain).
/// Throws ConfigError without an exact solution.
double dg_error(const DgSpace& space, const ProblemSpec& prob, const Penalties& pen,
                std::span<const double> coeffs);

}  // namespace foldfem
