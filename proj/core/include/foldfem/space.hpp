#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "foldfem/basis.hpp"
#include "foldfem/mesh.hpp"

namespace foldfem {

/// Affine map x = origin + J xi from the reference triangle onto one element.
struct ElementMap {
  Point origin;
  std::array<std::array<double, 2>, 2> jacobian{};
  std::array<std::array<double, 2>, 2> inverse{};  // inverse[a][i] = d xi_a / d x_i
  double det = 0.0;
  JetTransform transform;

  explicit ElementMap(const std::array<Point, 3>& vertices);
  ElementMap() = default;

  Point to_physical(Point xi) const;
  Point to_reference(Point x) const;
};

/// Scalar field evaluated on a given subdomain (1 or 2); the subdomain picks
/// the branch of fields that are only piecewise smooth across the fold.
using ScalarField = std::function<double(Point, int subdomain)>;
using VectorField = std::function<Vec2(Point, int subdomain)>;

/// Fully discontinuous space of degree-k polynomials on every triangle.
/// Element t owns dofs [t * n_loc, (t + 1) * n_loc).
class DgSpace {
 public:
  DgSpace(std::shared_ptr<const Mesh> mesh, int k);

  int degree() const { return basis_.degree(); }
  const Mesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const Mesh>& mesh_ptr() const { return mesh_; }
  const LagrangeBasis& basis() const { return basis_; }
  int dofs_per_element() const { return basis_.size(); }
  int num_dofs() const { return mesh_->num_triangles() * dofs_per_element(); }
  int first_dof(int t) const { return t * dofs_per_element(); }
  const ElementMap& element_map(int t) const { return maps_[t]; }

  /// Physical jets of every local basis function of t at physical point x
  /// (no containment check).
  void eval_basis(int t, Point x, int max_order, std::span<Jet> out) const;

  /// Jet of the discrete function with coefficients `coeffs` (global vector)
  /// restricted to t, at x.
  Jet eval_function(int t, Point x, std::span<const double> coeffs, int max_order) const;

 private:
  std::shared_ptr<const Mesh> mesh_;
  LagrangeBasis basis_;
  std::vector<ElementMap> maps_;
};

/// Jet of the discrete function on triangle t at physical point p; throws
/// ConfigError when p is outside t by more than 1e-12 in barycentric terms.
Jet physical_eval(const DgSpace& space, int t, Point p, std::span<const double> coeffs);

/// Elementwise nodal interpolation; each element samples `field` on its own
/// subdomain.
std::vector<double> interpolate(const DgSpace& space, const ScalarField& field);

}  // namespace foldfem
