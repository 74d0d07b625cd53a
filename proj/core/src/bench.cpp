#include "foldfem/bench.hpp"

#include <cmath>
#include <numbers>

namespace foldfem {

Mesh BenchmarkCase::initial_mesh(int n) const {
  return build_structured(domain, n, problem.fold, problem.dirichlet);
}

std::array<double, 5> flat_fold_profile(double t) {
  // p and its derivatives; u^(m) = sum_j C(m, j) p^(j) e^t.
  const double p[4] = {t * t * t / 2.0 - t * t + t, 1.5 * t * t - 2.0 * t + 1.0, 3.0 * t - 2.0, 3.0};
  const double e = std::exp(t);
  return {p[0] * e, (p[0] + p[1]) * e, (p[0] + 2.0 * p[1] + p[2]) * e,
          (p[0] + 3.0 * p[1] + 3.0 * p[2] + p[3]) * e, (p[0] + 4.0 * p[1] + 6.0 * p[2] + 4.0 * p[3]) * e};
}

std::shared_ptr<const FoldCurve> flat_fold_curve() {
  return std::make_shared<const FoldCurve>(
      FoldCurve::polyline(FoldCurve::Axis::Y, {{0.5, 0.0}, {0.5, 1.0}}));
}

std::shared_ptr<const FoldCurve> v_fold_curve() {
  return std::make_shared<const FoldCurve>(
      FoldCurve::polyline(FoldCurve::Axis::X, {{0.0, 0.75}, {0.5, 0.5}, {1.0, 0.75}}));
}

std::shared_ptr<const FoldCurve> l_shape_fold_curve() {
  const double pi = std::numbers::pi;
  return std::make_shared<const FoldCurve>(FoldCurve::smooth(
      FoldCurve::Axis::X, -1.0, 1.0, [pi](double x) { return std::sin(pi * (x + 1.0)) / 6.0 - 0.5; },
      [pi](double x) { return pi * std::cos(pi * (x + 1.0)) / 6.0; }));
}

BenchmarkCase case_flat_fold() {
  BenchmarkCase c;
  c.name = "flat_fold";
  c.domain = Domain::UnitSquare;
  c.initial_n = 4;
  c.penalties = {30.0, 30.0};
  c.reference_dof_slope = -0.5;
  ProblemSpec& p = c.problem;
  p.name = c.name;
  p.fold = flat_fold_curve();
  p.exact = [](Point x, int sub) {
    Jet j;
    if (sub == 1) return j;
    const auto u = flat_fold_profile(x.x - 0.5);
    j.value = u[0];
    j.d1[0] = u[1];
    j.d2[0] = u[2];
    j.d3[0] = u[3];
    j.d4[0] = u[4];
    return j;
  };
  p.f = [](Point x, int sub) { return sub == 1 ? 0.0 : flat_fold_profile(x.x - 0.5)[4]; };
  p.g = [exact = *p.exact](Point x, int sub) { return exact(x, sub).value; };
  p.phi = [exact = *p.exact](Point x, int sub) { return exact(x, sub).gradient(); };
  return c;
}

BenchmarkCase case_v_fold() {
  BenchmarkCase c;
  c.name = "v_fold";
  c.domain = Domain::UnitSquare;
  c.initial_n = 4;
  c.penalties = {70.0, 70.0};
  ProblemSpec& p = c.problem;
  p.name = c.name;
  p.fold = v_fold_curve();
  const double pi = std::numbers::pi;
  p.f = [](Point, int) { return 0.0; };
  p.g = [pi](Point x, int) { return 0.35 * std::sin(pi * x.x); };
  p.phi = [pi](Point x, int) { return Vec2{0.35 * pi * std::cos(pi * x.x), 0.0}; };
  p.dirichlet = [](Point a, Point b) { return std::abs(a.y - 1.0) < 1e-12 && std::abs(b.y - 1.0) < 1e-12; };
  p.point_constraints = {{{0.5, 0.0}, 1.0}};
  return c;
}

BenchmarkCase case_l_shape() {
  BenchmarkCase c;
  c.name = "l_shape";
  c.domain = Domain::LShape;
  c.initial_n = 4;
  c.penalties = {50.0, 50.0};
  ProblemSpec& p = c.problem;
  p.name = c.name;
  p.fold = l_shape_fold_curve();
  p.f = [](Point, int) { return 0.0; };
  p.g = [](Point q, int) { return (q.x * q.x + q.y * q.y + 2.0 * q.x * q.y - q.x - q.y) / 6.0; };
  p.phi = [](Point q, int) {
    const double d = (2.0 * q.x + 2.0 * q.y - 1.0) / 6.0;
    return Vec2{d, d};
  };
  return c;
}

std::vector<std::string> case_names() { return {"flat_fold", "v_fold", "l_shape"}; }

BenchmarkCase case_by_name(const std::string& name) {
  if (name == "flat_fold") return case_flat_fold();
  if (name == "v_fold") return case_v_fold();
  if (name == "l_shape") return case_l_shape();
  throw ConfigError("unknown case '" + name + "' (expected flat_fold, v_fold or l_shape)");
}

BenchmarkCase manufactured_case(std::string name, Domain domain, int n, std::shared_ptr<const FoldCurve> fold,
                                ExactSolution exact, ScalarField f, Penalties pen, BoundaryClassifier dirichlet) {
  BenchmarkCase c;
  c.name = std::move(name);
  c.domain = domain;
  c.initial_n = n;
  c.penalties = pen;
  ProblemSpec& p = c.problem;
  p.name = c.name;
  p.fold = std::move(fold);
  p.f = std::move(f);
  p.g = [exact](Point x, int sub) { return exact(x, sub).value; };
  p.phi = [exact](Point x, int sub) { return exact(x, sub).gradient(); };
  p.dirichlet = std::move(dirichlet);
  p.exact = std::move(exact);
  return c;
}

}  // namespace foldfem
