#include "foldfem/space.hpp"

#include <string>

namespace foldfem {

ElementMap::ElementMap(const std::array<Point, 3>& v) : origin(v[0]) {
  const Vec2 e1 = v[1] - v[0];
  const Vec2 e2 = v[2] - v[0];
  jacobian = {{{e1.x, e2.x}, {e1.y, e2.y}}};
  det = cross(e1, e2);
  if (!(det > 0.0)) throw NumericalError("element map with non-positive Jacobian");
  inverse = {{{e2.y / det, -e2.x / det}, {-e1.y / det, e1.x / det}}};
  transform = JetTransform(inverse);
}

Point ElementMap::to_physical(Point xi) const {
  return {origin.x + jacobian[0][0] * xi.x + jacobian[0][1] * xi.y,
          origin.y + jacobian[1][0] * xi.x + jacobian[1][1] * xi.y};
}

Point ElementMap::to_reference(Point x) const {
  const Vec2 d = x - origin;
  return {inverse[0][0] * d.x + inverse[0][1] * d.y, inverse[1][0] * d.x + inverse[1][1] * d.y};
}

DgSpace::DgSpace(std::shared_ptr<const Mesh> mesh, int k) : mesh_(std::move(mesh)), basis_(k) {
  if (k < 2 || k > 4) throw ConfigError("DG degree must be in [2, 4], got " + std::to_string(k));
  maps_.reserve(mesh_->num_triangles());
  for (const Triangle& tri : mesh_->triangles()) {
    maps_.emplace_back(std::array<Point, 3>{mesh_->vertex(tri.v[0]), mesh_->vertex(tri.v[1]),
                                            mesh_->vertex(tri.v[2])});
  }
}

void DgSpace::eval_basis(int t, Point x, int max_order, std::span<Jet> out) const {
  const ElementMap& map = maps_[t];
  basis_.evaluate(map.to_reference(x), max_order, out);
  for (int i = 0; i < dofs_per_element(); ++i) out[i] = map.transform.apply(out[i], max_order);
}

Jet DgSpace::eval_function(int t, Point x, std::span<const double> coeffs, int max_order) const {
  std::array<Jet, 15> local;
  const int n = dofs_per_element();
  eval_basis(t, x, max_order, std::span<Jet>(local.data(), n));
  Jet sum;
  const int base = first_dof(t);
  for (int i = 0; i < n; ++i) sum += coeffs[base + i] * local[i];
  return sum;
}

Jet physical_eval(const DgSpace& space, int t, Point p, std::span<const double> coeffs) {
  if (t < 0 || t >= space.mesh().num_triangles()) throw ConfigError("element id out of range");
  if (static_cast<int>(coeffs.size()) != space.num_dofs()) throw ConfigError("coefficient vector size mismatch");
  if (!space.mesh().contains(t, p, 1e-12)) throw ConfigError("evaluation point outside element " + std::to_string(t));
  return space.eval_function(t, p, coeffs, kMaxDerivativeOrder);
}

std::vector<double> interpolate(const DgSpace& space, const ScalarField& field) {
  std::vector<double> coeffs(space.num_dofs());
  const Mesh& mesh = space.mesh();
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const ElementMap& map = space.element_map(t);
    const int sub = mesh.subdomain(t);
    const auto nodes = space.basis().nodes();
    for (int i = 0; i < space.dofs_per_element(); ++i) {
      coeffs[space.first_dof(t) + i] = field(map.to_physical(nodes[i]), sub);
    }
  }
  return coeffs;
}

}  // namespace foldfem
