#include "foldfem/estimate.hpp"

#include <cmath>

#include "traces.hpp"

namespace foldfem {

double EstimatorReport::total(EstimatorVariant v) const {
  double s = 0.0;
  for (int i = v == EstimatorVariant::WithEta1 ? 1 : 2; i <= 6; ++i) s += eta[i] * eta[i];
  return std::sqrt(s);
}

EstimatorReport compute_estimators(const DgSpace& space, const ProblemSpec& prob, std::span<const double> coeffs,
                                   EstimatorVariant variant) {
  if (static_cast<int>(coeffs.size()) != space.num_dofs()) throw ConfigError("coefficient vector size mismatch");
  const Mesh& mesh = space.mesh();
  const int k = space.degree();
  EstimatorReport report;
  report.variant = variant;
  report.eta1_squared.assign(mesh.num_triangles(), 0.0);
  report.edges.assign(mesh.num_edges(), {});

  const QuadratureRule vol = triangle_quadrature(detail::volume_degree(k));
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const ElementMap& map = space.element_map(t);
    const int sub = mesh.subdomain(t);
    const double h = mesh.diameter(t);
    double s = 0.0;
    for (std::size_t q = 0; q < vol.size(); ++q) {
      const Point x = map.to_physical(vol.points[q]);
      const double bilap = k >= 4 ? space.eval_function(t, x, coeffs, 4).bilaplacian() : 0.0;
      const double r = (prob.f ? prob.f(x, sub) : 0.0) - bilap;
      s += vol.weights[q] * map.det * r * r;
    }
    report.eta1_squared[t] = h * h * h * h * s;
  }

  const EdgeQuadratureRule erule = edge_quadrature(detail::edge_degree(k));
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edge(e);
    if (!edge.penalized()) continue;
    const detail::EdgePoints ep = detail::edge_points(mesh, e, erule);
    const Vec2 n = ep.geo.normal;
    const double h = ep.geo.length;
    EdgeContribution c;
    for (std::size_t q = 0; q < ep.points.size(); ++q) {
      const Point x = ep.points[q];
      const double w = ep.weights[q];
      const Jet in = space.eval_function(edge.inner, x, coeffs, 3);
      if (edge.tag == EdgeTag::Dirichlet) {
        const int sub = mesh.subdomain(edge.inner);
        const double jv = (prob.g ? prob.g(x, sub) : 0.0) - in.value;
        const Vec2 jg = (prob.phi ? prob.phi(x, sub) : Vec2{}) - in.gradient();
        c.eta2 += w * jv * jv / (h * h * h);
        c.eta3 += w * dot(jg, jg) / h;
        continue;
      }
      const Jet out = space.eval_function(edge.outer, x, coeffs, 3);
      const double jv = out.value - in.value;
      const Vec2 jg = out.gradient() - in.gradient();
      const Vec2 hn_in = in.hessian_times(n);
      const Vec2 hn_out = out.hessian_times(n);
      const Vec2 jhn = hn_out - hn_in;
      const double jdn = dot(out.grad_laplacian() - in.grad_laplacian(), n);
      c.eta2 += w * jv * jv / (h * h * h);
      if (edge.tag == EdgeTag::Crease) {
        const Vec2 avg = 0.5 * (hn_out + hn_in);
        c.eta5 += w * h * dot(avg, avg);
      } else {
        c.eta3 += w * dot(jg, jg) / h;
      }
      c.eta4 += w * h * dot(jhn, jhn);
      c.eta6 += w * h * h * h * jdn * jdn;
    }
    report.edges[e] = c;
  }

  std::array<double, 7> sq{};
  for (double v : report.eta1_squared) sq[1] += v;
  for (const EdgeContribution& c : report.edges) {
    sq[2] += c.eta2;
    sq[3] += c.eta3;
    sq[4] += c.eta4;
    sq[5] += c.eta5;
    sq[6] += c.eta6;
  }
  for (int i = 1; i <= 6; ++i) report.eta[i] = std::sqrt(sq[i]);
  return report;
}

std::vector<double> local_indicators(const EstimatorReport& report, const Mesh& mesh) {
  std::vector<double> sq(mesh.num_triangles(), 0.0);
  if (report.variant == EstimatorVariant::WithEta1) {
    for (int t = 0; t < mesh.num_triangles(); ++t) sq[t] = report.eta1_squared[t];
  }
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edge(e);
    const double s = report.edges[e].sum();
    if (edge.is_boundary()) {
      sq[edge.inner] += s;
    } else {
      sq[edge.inner] += 0.5 * s;
      sq[edge.outer] += 0.5 * s;
    }
  }
  for (double& v : sq) v = std::sqrt(v);
  return sq;
}

}  // namespace foldfem
