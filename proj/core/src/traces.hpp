#pragma once

// Shared edge/element integration helpers for assembly, norms and estimators.

#include <array>
#include <vector>

#include "foldfem/quadrature.hpp"
#include "foldfem/space.hpp"

namespace foldfem::detail {

inline constexpr int kMaxLocal = 15;
using LocalJets = std::array<Jet, kMaxLocal>;

struct EdgePoints {
  EdgeGeometry geo;
  std::vector<Point> points;
  std::vector<double> weights;  // physical: reference weight times length
};

inline EdgePoints edge_points(const Mesh& mesh, int e, const EdgeQuadratureRule& rule) {
  EdgePoints out;
  out.geo = mesh.edge_geometry(e);
  const Point a = mesh.vertex(mesh.edge(e).v[0]);
  const Point b = mesh.vertex(mesh.edge(e).v[1]);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    out.points.push_back(a + rule.points[q] * (b - a));
    out.weights.push_back(rule.weights[q] * out.geo.length);
  }
  return out;
}

/// Reference jets of the basis at every point of a reference rule.
inline std::vector<LocalJets> tabulate(const LagrangeBasis& basis, const QuadratureRule& rule, int max_order) {
  std::vector<LocalJets> table(rule.size());
  for (std::size_t q = 0; q < rule.size(); ++q) {
    basis.evaluate(rule.points[q], max_order, std::span<Jet>(table[q].data(), basis.size()));
  }
  return table;
}

inline int volume_degree(int k) { return 2 * k + 2; }
inline int edge_degree(int k) { return 2 * k + 2; }

}  // namespace foldfem::detail
