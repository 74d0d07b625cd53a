#include "foldfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <unordered_map>

namespace foldfem {

namespace {

constexpr double kFoldTol = 1e-12;

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

double edge_length2(Point a, Point b) {
  const Vec2 d = b - a;
  return dot(d, d);
}

// Rotates (CCW) vertex triple so that local vertex 0 is opposite the longest edge.
std::array<int, 3> orient_longest_edge(std::array<int, 3> v, std::span<const Point> pts) {
  if (signed_area2(pts[v[0]], pts[v[1]], pts[v[2]]) < 0.0) std::swap(v[1], v[2]);
  int best = 0;
  double best_len = -1.0;
  for (int i = 0; i < 3; ++i) {
    const double len = edge_length2(pts[v[(i + 1) % 3]], pts[v[(i + 2) % 3]]);
    const bool longer = len > best_len * (1.0 + 1e-12);
    const bool tie = !longer && len >= best_len * (1.0 - 1e-12);
    if (longer || (tie && v[i] < v[best])) {
      best = i;
      best_len = std::max(len, best_len);
    }
  }
  return {v[best], v[(best + 1) % 3], v[(best + 2) % 3]};
}

bool on_fold(const FoldCurve* fold, Point p) { return fold && fold->vertical_gap(p) <= kFoldTol; }

}  // namespace

const char* to_string(EdgeTag tag) {
  switch (tag) {
    case EdgeTag::Interior: return "interior";
    case EdgeTag::Dirichlet: return "dirichlet";
    case EdgeTag::Neumann: return "neumann";
    case EdgeTag::Crease: return "crease";
  }
  return "?";
}

Mesh Mesh::from_triangles(std::vector<Point> vertices, std::vector<std::array<int, 3>> triangles,
                          std::shared_ptr<const FoldCurve> fold, const BoundaryClassifier& dirichlet) {
  std::vector<Triangle> tris;
  tris.reserve(triangles.size());
  for (const auto& t : triangles) {
    for (int i : t) {
      if (i < 0 || i >= static_cast<int>(vertices.size()))
        throw ConfigError("triangle references a vertex that does not exist");
    }
    tris.push_back(Triangle{orient_longest_edge(t, vertices), -1, 0});
  }
  const FoldCurve* curve = fold.get();
  const std::vector<Point> pts = vertices;  // vertices is moved into build
  auto tagger = [&](int va, int vb, int /*inner*/, int outer) {
    if (outer < 0) {
      return (!dirichlet || dirichlet(pts[va], pts[vb])) ? EdgeTag::Dirichlet : EdgeTag::Neumann;
    }
    return (on_fold(curve, pts[va]) && on_fold(curve, pts[vb])) ? EdgeTag::Crease
                                                                 : EdgeTag::Interior;
  };
  return build(std::move(vertices), std::move(tris), std::move(fold), tagger);
}

Mesh Mesh::build(std::vector<Point> vertices, std::vector<Triangle> triangles,
                 std::shared_ptr<const FoldCurve> fold, const EdgeTagger& tagger) {
  Mesh mesh;
  mesh.vertices_ = std::move(vertices);
  mesh.triangles_ = std::move(triangles);
  mesh.fold_ = std::move(fold);

  const int nt = mesh.num_triangles();
  mesh.triangle_edges_.assign(nt, {-1, -1, -1});
  std::unordered_map<std::uint64_t, int> lookup;
  lookup.reserve(static_cast<std::size_t>(nt) * 2);
  for (int t = 0; t < nt; ++t) {
    const auto& v = mesh.triangles_[t].v;
    if (signed_area2(mesh.vertices_[v[0]], mesh.vertices_[v[1]], mesh.vertices_[v[2]]) <= 0.0)
      throw NumericalError("degenerate or inverted triangle " + std::to_string(t));
    for (int i = 0; i < 3; ++i) {
      const int a = v[(i + 1) % 3];
      const int b = v[(i + 2) % 3];
      auto [it, fresh] = lookup.try_emplace(edge_key(a, b), mesh.num_edges());
      if (fresh) {
        mesh.edges_.push_back(Edge{{std::min(a, b), std::max(a, b)}, t, -1, EdgeTag::Interior});
      } else {
        Edge& e = mesh.edges_[it->second];
        if (e.outer >= 0) throw Error("non-manifold edge shared by more than two triangles");
        e.outer = t;
      }
      mesh.triangle_edges_[t][i] = it->second;
    }
  }

  mesh.subdomain_.assign(nt, 1);
  if (mesh.fold_) {
    for (int t = 0; t < nt; ++t) mesh.subdomain_[t] = mesh.fold_->subdomain(mesh.centroid(t));
  }

  for (int id = 0; id < mesh.num_edges(); ++id) {
    Edge& e = mesh.edges_[id];
    e.tag = tagger(e.v[0], e.v[1], e.inner, e.outer);
    if (e.tag == EdgeTag::Crease) {
      if (e.is_boundary()) throw Error("crease edge on the domain boundary");
      // Orient so the normal points from Omega_1 into Omega_2.
      const EdgeGeometry g = mesh.edge_geometry(id);
      if (dot(g.normal, mesh.fold_->level_gradient(g.midpoint)) < 0.0) std::swap(e.inner, e.outer);
    } else if (!e.is_boundary() && (e.tag == EdgeTag::Dirichlet || e.tag == EdgeTag::Neumann)) {
      throw Error("interior edge tagged as boundary");
    }
  }
  return mesh;
}

EdgeGeometry Mesh::edge_geometry(int id) const {
  const Edge& e = edges_.at(id);
  const Point a = vertices_[e.v[0]];
  const Point b = vertices_[e.v[1]];
  const double len = distance(a, b);
  Vec2 tangent = (1.0 / len) * (b - a);
  Vec2 normal{tangent.y, -tangent.x};
  // Flip so the normal leaves the inner triangle.
  const Point c = centroid(e.inner);
  if (dot(normal, c - a) > 0.0) normal = -1.0 * normal;
  tangent = Vec2{-normal.y, normal.x};
  return {normal, tangent, len, midpoint(a, b)};
}

double Mesh::area(int t) const {
  const auto& v = triangles_[t].v;
  return 0.5 * signed_area2(vertices_[v[0]], vertices_[v[1]], vertices_[v[2]]);
}

double Mesh::diameter(int t) const {
  const auto& v = triangles_[t].v;
  double d2 = 0.0;
  for (int i = 0; i < 3; ++i) d2 = std::max(d2, edge_length2(vertices_[v[i]], vertices_[v[(i + 1) % 3]]));
  return std::sqrt(d2);
}

Point Mesh::centroid(int t) const {
  const auto& v = triangles_[t].v;
  return (1.0 / 3.0) * (vertices_[v[0]] + vertices_[v[1]] + vertices_[v[2]]);
}

double Mesh::min_angle() const {
  double best = std::numbers::pi;
  for (const auto& tri : triangles_) {
    for (int i = 0; i < 3; ++i) {
      const Point p = vertices_[tri.v[i]];
      const Vec2 a = vertices_[tri.v[(i + 1) % 3]] - p;
      const Vec2 b = vertices_[tri.v[(i + 2) % 3]] - p;
      best = std::min(best, std::atan2(std::abs(cross(a, b)), dot(a, b)));
    }
  }
  return best;
}

bool Mesh::contains(int t, Point p, double tol) const {
  const auto& v = triangles_[t].v;
  const Point a = vertices_[v[0]], b = vertices_[v[1]], c = vertices_[v[2]];
  const double det = signed_area2(a, b, c);
  const double l1 = signed_area2(a, p, c) / det;
  const double l2 = signed_area2(a, b, p) / det;
  const double l0 = 1.0 - l1 - l2;
  return l0 >= -tol && l1 >= -tol && l2 >= -tol;
}

Mesh Mesh::with_flipped_orientation(int e) const {
  if (edges_.at(e).is_boundary()) throw ConfigError("cannot flip the orientation of a boundary edge");
  Mesh copy = *this;
  std::swap(copy.edges_[e].inner, copy.edges_[e].outer);
  return copy;
}

void Mesh::check_invariants() const {
  auto fail = [](const std::string& what) { throw Error("mesh invariant violated: " + what); };
  for (const Point& p : vertices_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) fail("non-finite vertex");
  }
  for (int t = 0; t < num_triangles(); ++t) {
    const auto& v = triangles_[t].v;
    if (v[0] == v[1] || v[1] == v[2] || v[0] == v[2]) fail("repeated vertex in triangle");
    if (area(t) <= 0.0) fail("non-positive area in triangle " + std::to_string(t));
  }
  for (int id = 0; id < num_edges(); ++id) {
    const Edge& e = edges_[id];
    if (e.is_boundary()) {
      if (e.tag != EdgeTag::Dirichlet && e.tag != EdgeTag::Neumann) fail("boundary edge not tagged as boundary");
    } else if (e.tag != EdgeTag::Interior && e.tag != EdgeTag::Crease) {
      fail("interior edge tagged as boundary");
    }
    if (e.tag == EdgeTag::Crease) {
      if (!fold_) fail("crease edge without a fold");
      for (int vi : e.v) {
        if (fold_->vertical_gap(vertices_[vi]) > kFoldTol) fail("crease vertex off the fold");
      }
      const EdgeGeometry g = edge_geometry(id);
      if (dot(g.normal, fold_->level_gradient(g.midpoint)) <= 0.0) fail("crease normal not pointing into Omega_2");
    }
  }
  // Hanging nodes would leave a boundary edge inside the domain; the Euler
  // relation for a simply connected triangulation catches that as well.
  if (num_vertices() - num_edges() + num_triangles() != 1) fail("Euler relation V - E + T = 1");
  std::vector<int> vertex_on_boundary(num_vertices(), 0);
  for (const Edge& e : edges_) {
    if (e.is_boundary()) {
      ++vertex_on_boundary[e.v[0]];
      ++vertex_on_boundary[e.v[1]];
    }
  }
  for (int c : vertex_on_boundary) {
    if (c != 0 && c != 2) fail("boundary is not a simple closed polygon");
  }
}

bool operator==(const Mesh& a, const Mesh& b) {
  if (a.vertices_ != b.vertices_ || a.triangles_.size() != b.triangles_.size() ||
      a.edges_.size() != b.edges_.size())
    return false;
  for (std::size_t i = 0; i < a.triangles_.size(); ++i) {
    const auto &x = a.triangles_[i], &y = b.triangles_[i];
    if (x.v != y.v || x.parent != y.parent || x.level != y.level) return false;
  }
  for (std::size_t i = 0; i < a.edges_.size(); ++i) {
    const auto &x = a.edges_[i], &y = b.edges_[i];
    if (x.v != y.v || x.inner != y.inner || x.outer != y.outer || x.tag != y.tag) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Structured construction

namespace {

struct Block {
  double x0, x1, y0, y1;
  int nx, ny;
  bool fitted;
};

class VertexPool {
 public:
  int add(Point p) {
    const auto key = std::make_pair(std::llround(p.x * 1e10), std::llround(p.y * 1e10));
    auto [it, fresh] = index_.try_emplace(key, static_cast<int>(points_.size()));
    if (fresh) points_.push_back(p);
    return it->second;
  }
  const Point& operator[](int i) const { return points_[i]; }
  std::vector<Point> take() { return std::move(points_); }

 private:
  std::map<std::pair<long long, long long>, int> index_;
  std::vector<Point> points_;
};

bool on_rectangle_boundary(Point p, double x0, double x1, double y0, double y1) {
  const double tol = 1e-12;
  const bool inside_x = p.x >= x0 - tol && p.x <= x1 + tol;
  const bool inside_y = p.y >= y0 - tol && p.y <= y1 + tol;
  return inside_x && inside_y &&
         (std::abs(p.x - x0) <= tol || std::abs(p.x - x1) <= tol || std::abs(p.y - y0) <= tol ||
          std::abs(p.y - y1) <= tol);
}

bool on_domain_boundary(Domain domain, Point p) {
  if (domain == Domain::UnitSquare) return on_rectangle_boundary(p, 0, 1, 0, 1);
  // L-shape: boundary of (-1,1)^2 minus the removed quadrant's two inner sides.
  const double tol = 1e-12;
  const bool outer = on_rectangle_boundary(p, -1, 1, -1, 1) && !(p.x > tol && p.y > tol);
  const bool inner_x = std::abs(p.x) <= tol && p.y >= -tol && p.y <= 1 + tol;
  const bool inner_y = std::abs(p.y) <= tol && p.x >= -tol && p.x <= 1 + tol;
  return outer || inner_x || inner_y;
}

}  // namespace

Mesh build_structured(Domain domain, int n, std::shared_ptr<const FoldCurve> fold,
                      const BoundaryClassifier& dirichlet) {
  if (n < 2 || n % 2 != 0)
    throw ConfigError("structured mesh needs an even number of subdivisions n >= 2 (got " +
                      std::to_string(n) + ")");

  std::vector<Block> blocks;
  if (domain == Domain::UnitSquare) {
    blocks.push_back({0, 1, 0, 1, n, n, fold != nullptr});
  } else {
    if (fold && fold->axis() != FoldCurve::Axis::X)
      throw ConfigError("L-shape folds must be graphs over x1");
    // Lower strip (-1,1)x(-1,0) carries the fold; upper-left block is plain.
    blocks.push_back({-1, 1, -1, 0, 2 * n, n, fold != nullptr});
    blocks.push_back({-1, 0, 0, 1, n, n, false});
  }

  if (fold) {
    for (double s : {fold->s_min(), fold->s_max()}) {
      if (!on_domain_boundary(domain, fold->at(s))) throw ConfigError("fold endpoints must lie on the boundary");
    }
  }

  VertexPool pool;
  std::vector<std::array<int, 3>> tris;
  for (const Block& b : blocks) {
    const bool along_x = !fold || fold->axis() == FoldCurve::Axis::X;
    // (s, free) grid: s runs along the fold's graph axis.
    const double s0 = along_x ? b.x0 : b.y0, s1 = along_x ? b.x1 : b.y1;
    const double f0 = along_x ? b.y0 : b.x0, f1 = along_x ? b.y1 : b.x1;
    const int ns = along_x ? b.nx : b.ny, nf = along_x ? b.ny : b.nx;
    const int fold_row = nf / 2;

    std::vector<int> ids(static_cast<std::size_t>((ns + 1) * (nf + 1)));
    auto id = [&](int i, int j) -> int& { return ids[static_cast<std::size_t>(i * (nf + 1) + j)]; };
    for (int i = 0; i <= ns; ++i) {
      const double s = s0 + (s1 - s0) * i / ns;
      double c = 0.0;
      if (b.fitted) {
        c = fold->offset(s);
        if (!(c > f0 && c < f1)) throw NumericalError("fold leaves the fitted block; zero-area triangles would result");
      }
      for (int j = 0; j <= nf; ++j) {
        double f;
        if (!b.fitted) {
          f = f0 + (f1 - f0) * j / nf;
        } else if (j < fold_row) {
          f = f0 + (c - f0) * j / fold_row;
        } else if (j == fold_row) {
          f = c;
        } else {
          f = c + (f1 - c) * (j - fold_row) / (nf - fold_row);
        }
        id(i, j) = pool.add(along_x ? Point{s, f} : Point{f, s});
      }
    }
    // Cell split along the shorter diagonal; a tie picks (i,j)-(i+1,j+1).
    for (int i = 0; i < ns; ++i) {
      for (int j = 0; j < nf; ++j) {
        const int p00 = id(i, j), p10 = id(i + 1, j), p11 = id(i + 1, j + 1), p01 = id(i, j + 1);
        const double d1 = edge_length2(pool[p00], pool[p11]);
        const double d2 = edge_length2(pool[p10], pool[p01]);
        if (d1 <= d2 * (1.0 + 1e-12)) {
          tris.push_back({p00, p10, p11});
          tris.push_back({p00, p11, p01});
        } else {
          tris.push_back({p00, p10, p01});
          tris.push_back({p10, p11, p01});
        }
      }
    }
  }
  return Mesh::from_triangles(pool.take(), std::move(tris), std::move(fold), dirichlet);
}

// ---------------------------------------------------------------------------
// Refinement

Mesh refine(const Mesh& mesh, std::span<const int> marked) {
  const int nt = mesh.num_triangles();
  const int ne = mesh.num_edges();
  std::vector<char> split(ne, 0);
  std::vector<int> queue;
  for (int t : marked) {
    if (t < 0 || t >= nt) throw ConfigError("marked triangle id out of range");
    const int ref = mesh.triangle_edges(t)[Triangle::refinement_edge];
    if (!split[ref]) {
      split[ref] = 1;
      queue.push_back(ref);
    }
  }
  if (queue.empty()) return mesh;

  // Closure: a triangle with any split edge must split its refinement edge.
  while (!queue.empty()) {
    const int e = queue.back();
    queue.pop_back();
    for (int t : {mesh.edge(e).inner, mesh.edge(e).outer}) {
      if (t < 0) continue;
      const int ref = mesh.triangle_edges(t)[Triangle::refinement_edge];
      if (!split[ref]) {
        split[ref] = 1;
        queue.push_back(ref);
      }
    }
  }

  std::vector<Point> vertices(mesh.vertices().begin(), mesh.vertices().end());
  std::vector<int> mid(ne, -1);
  for (int e = 0; e < ne; ++e) {
    if (!split[e]) continue;
    const Edge& edge = mesh.edge(e);
    const Point a = mesh.vertex(edge.v[0]);
    const Point b = mesh.vertex(edge.v[1]);
    Point m = midpoint(a, b);
    if (edge.tag == EdgeTag::Crease) {
      const Point q = mesh.fold()->project(m);
      if (distance(q, m) > 0.5 * distance(a, b))
        throw NumericalError("fold projection failed for crease edge " + std::to_string(e));
      m = q;
    }
    mid[e] = static_cast<int>(vertices.size());
    vertices.push_back(m);
  }

  std::vector<Triangle> out;
  out.reserve(static_cast<std::size_t>(nt) + 3 * std::count(split.begin(), split.end(), 1));
  for (int t = 0; t < nt; ++t) {
    const Triangle& tri = mesh.triangle(t);
    const auto& te = mesh.triangle_edges(t);
    if (!split[te[0]]) {
      out.push_back(Triangle{tri.v, t, tri.level});
      continue;
    }
    const auto [v0, v1, v2] = tri.v;
    const int m0 = mid[te[0]];
    // Children (m0, v0, v1) and (m0, v2, v0); their refinement edges are the
    // parent's edges 2 and 1.
    if (split[te[2]]) {
      const int m2 = mid[te[2]];
      out.push_back(Triangle{{m2, m0, v0}, t, tri.level + 2});
      out.push_back(Triangle{{m2, v1, m0}, t, tri.level + 2});
    } else {
      out.push_back(Triangle{{m0, v0, v1}, t, tri.level + 1});
    }
    if (split[te[1]]) {
      const int m1 = mid[te[1]];
      out.push_back(Triangle{{m1, m0, v2}, t, tri.level + 2});
      out.push_back(Triangle{{m1, v0, m0}, t, tri.level + 2});
    } else {
      out.push_back(Triangle{{m0, v2, v0}, t, tri.level + 1});
    }
  }

  // Tags are inherited: halves of a split edge keep the parent's tag, edges
  // that existed before keep theirs, and new edges are interior.
  std::unordered_map<std::uint64_t, EdgeTag> inherited;
  inherited.reserve(static_cast<std::size_t>(ne) * 2);
  for (int e = 0; e < ne; ++e) {
    const Edge& edge = mesh.edge(e);
    if (split[e]) {
      inherited.emplace(edge_key(edge.v[0], mid[e]), edge.tag);
      inherited.emplace(edge_key(mid[e], edge.v[1]), edge.tag);
    } else {
      inherited.emplace(edge_key(edge.v[0], edge.v[1]), edge.tag);
    }
  }
  auto tagger = [&](int va, int vb, int, int outer) {
    auto it = inherited.find(edge_key(va, vb));
    if (it != inherited.end()) return it->second;
    if (outer < 0) throw Error("refinement produced a new boundary edge");
    return EdgeTag::Interior;
  };
  return Mesh::build(std::move(vertices), std::move(out), mesh.fold_ptr(), tagger);
}

Mesh refine_uniform(const Mesh& mesh) {
  std::vector<int> all(mesh.num_triangles());
  for (int t = 0; t < mesh.num_triangles(); ++t) all[t] = t;
  return refine(mesh, all);
}

}  // namespace foldfem
