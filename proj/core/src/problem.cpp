#include "foldfem/problem.hpp"

#include <algorithm>
#include <cmath>

namespace foldfem {

void Penalties::validate() const {
  if (!(gamma0 > 0.0) || !(gamma1 > 0.0)) throw ConfigError("penalty parameters must be strictly positive");
}

double compatibility_defect(const ProblemSpec& prob, const Mesh& mesh, int samples_per_edge) {
  if (!prob.g || !prob.phi) return 0.0;
  constexpr double step = 1e-3;
  double worst = 0.0;
  for (const Edge& e : mesh.edges()) {
    if (e.tag != EdgeTag::Dirichlet) continue;
    const int sub = mesh.subdomain(e.inner);
    const Point a = mesh.vertex(e.v[0]);
    const Point b = mesh.vertex(e.v[1]);
    for (int s = 1; s <= samples_per_edge; ++s) {
      const double t = static_cast<double>(s) / (samples_per_edge + 1);
      const Point p = a + t * (b - a);
      auto d = [&](Vec2 dir) {
        auto at = [&](double k) { return prob.g(p + (k * step) * dir, sub); };
        return (-at(2) + 8.0 * at(1) - 8.0 * at(-1) + at(-2)) / (12.0 * step);
      };
      const Vec2 phi = prob.phi(p, sub);
      worst = std::max({worst, std::abs(phi.x - d({1, 0})), std::abs(phi.y - d({0, 1}))});
    }
  }
  return worst;
}

}  // namespace foldfem
