#include "foldfem/assemble.hpp"

#include <cmath>
#include <string>

#include "traces.hpp"

namespace foldfem {

using detail::LocalJets;

namespace {

// Per-side data of an edge: element, jump sign, average weight.
struct Side {
  int element;
  double jump;
  double average;
};

std::array<Side, 2> edge_sides(const Edge& e, int& count) {
  if (e.is_boundary()) {
    count = 1;
    return {Side{e.inner, -1.0, 1.0}, Side{}};
  }
  count = 2;
  return {Side{e.inner, -1.0, 0.5}, Side{e.outer, 1.0, 0.5}};
}

}  // namespace

LinearSystem assemble(const DgSpace& space, const ProblemSpec& prob, const Penalties& pen) {
  pen.validate();
  const Mesh& mesh = space.mesh();
  const int k = space.degree();
  const int nloc = space.dofs_per_element();
  const QuadratureRule vol = triangle_quadrature(detail::volume_degree(k));
  const EdgeQuadratureRule erule = edge_quadrature(detail::edge_degree(k));
  const auto ref = detail::tabulate(space.basis(), vol, 2);

  std::vector<SparseSym::Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(mesh.num_triangles()) * nloc * nloc * 7);
  std::vector<double> rhs(space.num_dofs(), 0.0);

  std::vector<double> local(static_cast<std::size_t>(4 * nloc * nloc));
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const ElementMap& map = space.element_map(t);
    const int sub = mesh.subdomain(t);
    const int base = space.first_dof(t);
    std::fill(local.begin(), local.begin() + nloc * nloc, 0.0);
    for (std::size_t q = 0; q < vol.size(); ++q) {
      const double w = vol.weights[q] * map.det;
      LocalJets phys;
      for (int i = 0; i < nloc; ++i) phys[i] = map.transform.apply(ref[q][i], 2);
      for (int i = 0; i < nloc; ++i) {
        for (int j = 0; j < nloc; ++j) local[i * nloc + j] += w * hessian_product(phys[i], phys[j]);
      }
      if (prob.f) {
        const double fq = prob.f(map.to_physical(vol.points[q]), sub);
        for (int i = 0; i < nloc; ++i) rhs[base + i] += w * fq * phys[i].value;
      }
    }
    for (int i = 0; i < nloc; ++i) {
      for (int j = 0; j < nloc; ++j) triplets.emplace_back(base + i, base + j, local[i * nloc + j]);
    }
  }

  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edge(e);
    if (!edge.penalized()) continue;
    const bool crease = edge.tag == EdgeTag::Crease;
    const bool dirichlet = edge.tag == EdgeTag::Dirichlet;
    int nsides = 0;
    const auto sides = edge_sides(edge, nsides);
    const detail::EdgePoints ep = detail::edge_points(mesh, e, erule);
    const Vec2 n = ep.geo.normal;
    const double h = ep.geo.length;
    const double pen0 = pen.gamma0 / (h * h * h);
    const double pen1 = pen.gamma1 / h;
    const int m = nsides * nloc;
    std::fill(local.begin(), local.begin() + m * m, 0.0);

    for (std::size_t q = 0; q < ep.points.size(); ++q) {
      const Point x = ep.points[q];
      const double w = ep.weights[q];
      // Per combined index: jump/average-weighted traces.
      std::array<double, 2 * detail::kMaxLocal> jv{}, adn{};
      std::array<Vec2, 2 * detail::kMaxLocal> jg{}, ahn{};
      for (int s = 0; s < nsides; ++s) {
        LocalJets jets;
        space.eval_basis(sides[s].element, x, 3, std::span<Jet>(jets.data(), nloc));
        for (int i = 0; i < nloc; ++i) {
          const int c = s * nloc + i;
          jv[c] = sides[s].jump * jets[i].value;
          jg[c] = sides[s].jump * jets[i].gradient();
          ahn[c] = sides[s].average * jets[i].hessian_times(n);
          adn[c] = sides[s].average * dot(jets[i].grad_laplacian(), n);
        }
      }
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
          double v = -(adn[b] * jv[a] + adn[a] * jv[b]) + pen0 * jv[a] * jv[b];
          if (!crease) v += dot(ahn[b], jg[a]) + dot(ahn[a], jg[b]) + pen1 * dot(jg[a], jg[b]);
          local[a * m + b] += w * v;
        }
      }
      if (dirichlet) {
        const int sub = mesh.subdomain(edge.inner);
        const double g = prob.g ? prob.g(x, sub) : 0.0;
        const Vec2 phi = prob.phi ? prob.phi(x, sub) : Vec2{};
        const int base = space.first_dof(edge.inner);
        for (int i = 0; i < nloc; ++i) {
          rhs[base + i] += w * (-dot(ahn[i], phi) + adn[i] * g - pen1 * dot(jg[i], phi) - pen0 * jv[i] * g);
        }
      }
    }
    for (int a = 0; a < m; ++a) {
      const int ra = space.first_dof(sides[a / nloc].element) + a % nloc;
      for (int b = 0; b < m; ++b) {
        const int cb = space.first_dof(sides[b / nloc].element) + b % nloc;
        triplets.emplace_back(ra, cb, local[a * m + b]);
      }
    }
  }
  return LinearSystem{SparseSym(space.num_dofs(), triplets), std::move(rhs)};
}

LinearSystem apply_point_constraint(LinearSystem sys, const DgSpace& space, Point loc, double value,
                                    std::optional<double> weight, const Penalties& pen) {
  const Mesh& mesh = space.mesh();
  const int nloc = space.dofs_per_element();
  bool found = false;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    if (!mesh.contains(t, loc, 1e-12)) continue;
    found = true;
    const double h = mesh.diameter(t);
    const double wgt = weight.value_or(pen.gamma0 / (h * h * h));
    if (wgt == 0.0) continue;
    LocalJets jets;
    space.eval_basis(t, loc, 0, std::span<Jet>(jets.data(), nloc));
    const int base = space.first_dof(t);
    for (int i = 0; i < nloc; ++i) {
      for (int j = 0; j < nloc; ++j)
        sys.matrix.storage().coeffRef(base + i, base + j) += wgt * jets[i].value * jets[j].value;
      sys.rhs[base + i] += wgt * value * jets[i].value;
    }
  }
  if (!found) throw ConfigError("point constraint location lies outside the mesh");
  return sys;
}

DiscreteSolution solve_problem(const DgSpace& space, const ProblemSpec& prob, const Penalties& pen,
                               SolveOptions options) {
  LinearSystem sys = assemble(space, prob, pen);
  for (const PointConstraint& pc : prob.point_constraints) {
    sys = apply_point_constraint(std::move(sys), space, pc.location, pc.value, std::nullopt, pen);
  }
  options.block_size = space.dofs_per_element();
  SolveReport report = solve_spd(sys.matrix, sys.rhs, options);
  std::vector<double> coeffs = std::move(report.solution);
  report.solution.clear();
  return {std::move(coeffs), std::move(report)};
}

namespace {

// Squared DG norm of an elementwise function given by its jet on each
// element. On Dirichlet edges the jump is minus the inner trace.
template <class JetOn>
double dg_norm_squared(const DgSpace& space, const Penalties& pen, JetOn&& jet_on) {
  const Mesh& mesh = space.mesh();
  const int k = space.degree();
  const QuadratureRule vol = triangle_quadrature(detail::volume_degree(k));
  const EdgeQuadratureRule erule = edge_quadrature(detail::edge_degree(k));
  double sum = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const ElementMap& map = space.element_map(t);
    for (std::size_t q = 0; q < vol.size(); ++q) {
      const Jet j = jet_on(t, map.to_physical(vol.points[q]));
      sum += vol.weights[q] * map.det * hessian_product(j, j);
    }
  }
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edge(e);
    if (!edge.penalized()) continue;
    const detail::EdgePoints ep = detail::edge_points(mesh, e, erule);
    const double h = ep.geo.length;
    for (std::size_t q = 0; q < ep.points.size(); ++q) {
      const Jet in = jet_on(edge.inner, ep.points[q]);
      Jet out;
      if (!edge.is_boundary()) out = jet_on(edge.outer, ep.points[q]);
      const double jv = out.value - in.value;
      const Vec2 jg = out.gradient() - in.gradient();
      sum += ep.weights[q] * pen.gamma0 / (h * h * h) * jv * jv;
      if (edge.tag != EdgeTag::Crease) sum += ep.weights[q] * pen.gamma1 / h * dot(jg, jg);
    }
  }
  return sum;
}

}  // namespace

double dg_norm(const DgSpace& space, const Penalties& pen, std::span<const double> coeffs) {
  if (static_cast<int>(coeffs.size()) != space.num_dofs()) throw ConfigError("coefficient vector size mismatch");
  return std::sqrt(dg_norm_squared(space, pen, [&](int t, Point x) { return space.eval_function(t, x, coeffs, 2); }));
}

double dg_error(const DgSpace& space, const ProblemSpec& prob, const Penalties& pen,
                std::span<const double> coeffs) {
  if (!prob.exact) throw ConfigError("dg_error needs an exact solution");
  if (static_cast<int>(coeffs.size()) != space.num_dofs()) throw ConfigError("coefficient vector size mismatch");
  const Mesh& mesh = space.mesh();
  return std::sqrt(dg_norm_squared(space, pen, [&](int t, Point x) {
    Jet err = (*prob.exact)(x, mesh.subdomain(t));
    err += -1.0 * space.eval_function(t, x, coeffs, 2);
    return err;
  }));
}

}  // namespace foldfem
