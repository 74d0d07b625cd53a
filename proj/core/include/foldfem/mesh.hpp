#pragma once

#include <array>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "foldfem/fold_curve.hpp"
#include "foldfem/geometry.hpp"

namespace foldfem {

enum class EdgeTag { Interior, Dirichlet, Neumann, Crease };

const char* to_string(EdgeTag tag);

/// Counter-clockwise triangle. Vertex 0 is the newest vertex; the
/// refinement edge is the edge opposite it (local edge 0). Local edge i is
/// always the edge opposite local vertex i.
struct Triangle {
  static constexpr int refinement_edge = 0;

  std::array<int, 3> v{};
  int parent = -1;  // triangle id in the mesh this one was refined from
  int level = 0;
};

/// Edge with a fixed orientation: the unit normal points out of `inner`
/// into `outer`, and jumps are taken as value(outer) - value(inner). On
/// boundary edges `outer` is -1 and the normal is the outward normal.
/// On crease edges `inner` lies in Omega_1.
struct Edge {
  std::array<int, 2> v{};
  int inner = -1;
  int outer = -1;
  EdgeTag tag = EdgeTag::Interior;

  bool is_boundary() const { return outer < 0; }
  /// Member of the penalized edge set: interior, crease, or Dirichlet.
  bool penalized() const { return tag != EdgeTag::Neumann; }
};

struct EdgeGeometry {
  Vec2 normal;   // points out of the edge's inner triangle
  Vec2 tangent;  // normal rotated by +90 degrees
  double length = 0.0;
  Point midpoint;
};

/// Returns true when the boundary segment [a, b] belongs to the Dirichlet part.
using BoundaryClassifier = std::function<bool(Point a, Point b)>;

enum class Domain { UnitSquare, LShape };

/// Conforming, crease-fitted triangulation. Immutable once built: refinement
/// and orientation changes return new meshes.
class Mesh {
 public:
  /// Builds topology, edge tags and orientations from a raw triangle list.
  /// Triangles are reordered to counter-clockwise and rotated so the longest
  /// edge is the refinement edge (ties: smallest opposite vertex index).
  /// Interior edges with both endpoints on the fold are tagged Crease.
  static Mesh from_triangles(std::vector<Point> vertices, std::vector<std::array<int, 3>> triangles,
                             std::shared_ptr<const FoldCurve> fold = nullptr,
                             const BoundaryClassifier& dirichlet = {});

  std::span<const Point> vertices() const { return vertices_; }
  std::span<const Triangle> triangles() const { return triangles_; }
  std::span<const Edge> edges() const { return edges_; }
  const Point& vertex(int i) const { return vertices_[i]; }
  const Triangle& triangle(int t) const { return triangles_[t]; }
  const Edge& edge(int e) const { return edges_[e]; }
  /// Edge ids of triangle t; entry i is the edge opposite local vertex i.
  const std::array<int, 3>& triangle_edges(int t) const { return triangle_edges_[t]; }
  const FoldCurve* fold() const { return fold_.get(); }
  const std::shared_ptr<const FoldCurve>& fold_ptr() const { return fold_; }

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_triangles() const { return static_cast<int>(triangles_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  EdgeGeometry edge_geometry(int e) const;
  double area(int t) const;
  /// Longest edge length of t.
  double diameter(int t) const;
  Point centroid(int t) const;
  /// 1 or 2 (always 1 without a fold).
  int subdomain(int t) const { return subdomain_[t]; }
  /// Smallest interior angle over all triangles, in radians.
  double min_angle() const;
  /// Barycentric containment test with tolerance.
  bool contains(int t, Point p, double tol = 1e-12) const;

  /// Copy of this mesh with edge e's orientation reversed (inner/outer swapped).
  Mesh with_flipped_orientation(int e) const;

  /// Throws Error describing the first violated structural invariant.
  void check_invariants() const;

  friend bool operator==(const Mesh& a, const Mesh& b);

 private:
  friend Mesh refine(const Mesh& mesh, std::span<const int> marked);

  using EdgeTagger = std::function<EdgeTag(int va, int vb, int inner, int outer)>;
  static Mesh build(std::vector<Point> vertices, std::vector<Triangle> triangles,
                    std::shared_ptr<const FoldCurve> fold, const EdgeTagger& tagger);

  std::vector<Point> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<Edge> edges_;
  std::vector<std::array<int, 3>> triangle_edges_;
  std::vector<int> subdomain_;
  std::shared_ptr<const FoldCurve> fold_;
};

/// Structured crease-fitted mesh. Each unit block is an n x n grid of cells
/// split along the shorter diagonal; when a fold is given, the grid row
/// nearest the middle of the block is mapped onto the fold (sampled at the
/// grid columns). The L-shape is three unit blocks.
Mesh build_structured(Domain domain, int n, std::shared_ptr<const FoldCurve> fold = nullptr,
                      const BoundaryClassifier& dirichlet = {});

/// Newest-vertex bisection of every marked triangle plus the closure needed
/// for conformity. New vertices on crease edges are projected onto the fold.
Mesh refine(const Mesh& mesh, std::span<const int> marked);

/// Refines every triangle once.
Mesh refine_uniform(const Mesh& mesh);

}  // namespace foldfem
