#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "foldfem/basis.hpp"
#include "foldfem/fold_curve.hpp"
#include "foldfem/mesh.hpp"
#include "foldfem/space.hpp"

namespace foldfem {

/// Interior penalty parameters for value jumps (gamma0 / h^3) and gradient
/// jumps (gamma1 / h).
struct Penalties {
  double gamma0 = 30.0;
  double gamma1 = 30.0;

  /// Below this value the flat-fold experiments were observed to lose stability.
  static constexpr double kStableThreshold = 30.0;

  void validate() const;
  bool below_stable_threshold() const { return gamma0 < kStableThreshold || gamma1 < kStableThreshold; }
};

struct PointConstraint {
  Point location;
  double value = 0.0;
};

/// Exact solution with derivatives through (at least) order two, evaluated on
/// a given subdomain.
using ExactSolution = std::function<Jet(Point, int subdomain)>;

/// Data of the linearized folding problem: Delta^2 u = f away from the fold,
/// u = g and grad u = Phi on the Dirichlet boundary, natural conditions on
/// the rest, and the crease conditions on the fold.
struct ProblemSpec {
  std::string name;
  ScalarField f;
  ScalarField g;
  VectorField phi;
  std::shared_ptr<const FoldCurve> fold;
  BoundaryClassifier dirichlet;  // empty: all of the boundary is Dirichlet
  std::vector<PointConstraint> point_constraints;
  std::optional<ExactSolution> exact;
};

/// Largest deviation |Phi - grad g| over sample points on the Dirichlet
/// edges of mesh (grad g by a fourth-order central difference).
double compatibility_defect(const ProblemSpec& prob, const Mesh& mesh, int samples_per_edge = 5);

}  // namespace foldfem
