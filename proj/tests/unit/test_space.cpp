#include <doctest.h>

#include <cmath>

#include "foldfem/space.hpp"
#include "helpers.hpp"

using namespace foldfem;

namespace {

std::shared_ptr<const Mesh> skewed_mesh() {
  return testing::share(Mesh::from_triangles({{0.1, 0.2}, {0.9, 0.35}, {0.3, 0.8}, {1.1, 1.0}}, {{0, 1, 2}, {1, 3, 2}},
                                             nullptr));
}

double entry(const Jet& j, int order, int q) {
  switch (order) {
    case 0: return j.value;
    case 1: return j.d1[q];
    case 2: return j.d2[q];
    case 3: return j.d3[q];
    default: return j.d4[q];
  }
}

}  // namespace

TEST_CASE("dof layout") {
  const auto m = testing::share(build_structured(Domain::UnitSquare, 2));
  for (int k = 2; k <= 4; ++k) {
    const DgSpace s(m, k);
    CHECK(s.dofs_per_element() == (k + 1) * (k + 2) / 2);
    CHECK(s.num_dofs() == m->num_triangles() * s.dofs_per_element());
    CHECK(s.first_dof(3) == 3 * s.dofs_per_element());
  }
  CHECK_THROWS_AS(DgSpace(m, 1), ConfigError);
  CHECK_THROWS_AS(DgSpace(m, 5), ConfigError);
}

TEST_CASE("x1^2 has Hessian diag(2, 0) everywhere") {
  const auto m = skewed_mesh();
  const DgSpace s(m, 2);
  const auto c = interpolate(s, [](Point x, int) { return x.x * x.x; });
  for (int t = 0; t < m->num_triangles(); ++t) {
    for (int i = 0; i < 10; ++i) {
      const Jet j = physical_eval(s, t, testing::random_point_in(*m, t), c);
      CHECK(j.d2[0] == doctest::Approx(2.0).epsilon(1e-11));
      CHECK(std::abs(j.d2[1]) <= 1e-11);
      CHECK(std::abs(j.d2[2]) <= 1e-11);
      for (double v : j.d4) CHECK(v == 0.0);
    }
  }
}

TEST_CASE("zero coefficients give a zero jet") {
  const auto m = skewed_mesh();
  const DgSpace s(m, 3);
  const std::vector<double> c(s.num_dofs(), 0.0);
  const Jet j = physical_eval(s, 0, m->centroid(0), c);
  CHECK(j.value == 0.0);
  CHECK(j.d1[0] == 0.0);
  CHECK(j.d3[2] == 0.0);
}

TEST_CASE("x1^3 with k=3") {
  const auto m = skewed_mesh();
  const DgSpace s(m, 3);
  const auto c = interpolate(s, [](Point x, int) { return x.x * x.x * x.x; });
  const Jet j = physical_eval(s, 1, m->centroid(1), c);
  CHECK(j.third(0, 0, 0) == doctest::Approx(6.0).epsilon(1e-9));
  CHECK(std::abs(j.d3[1]) <= 1e-9);
  CHECK(std::abs(j.bilaplacian()) <= 1e-12);
}

TEST_CASE("interpolation reproduces polynomials of degree <= k") {
  const auto m = skewed_mesh();
  for (int k = 2; k <= 4; ++k) {
    const DgSpace s(m, k);
    auto poly = [k](Point x, int) {
      double v = 0.3;
      for (int a = 0; a <= k; ++a) {
        for (int b = 0; a + b <= k; ++b) v += 0.1 * (a + 2 * b + 1) * std::pow(x.x, a) * std::pow(x.y, b);
      }
      return v;
    };
    const auto c = interpolate(s, poly);
    for (int i = 0; i < 100; ++i) {
      const int t = i % 2;
      const Point p = testing::random_point_in(*m, t);
      CHECK(physical_eval(s, t, p, c).value == doctest::Approx(poly(p, 1)).epsilon(1e-12));
    }
  }
}

TEST_CASE("chain rule: physical derivatives against differences") {
  const auto m = skewed_mesh();
  const DgSpace s(m, 4);
  std::vector<double> c(s.num_dofs());
  for (double& v : c) v = testing::uniform(-1, 1);
  const double h = 1e-5;
  for (int i = 0; i < 10; ++i) {
    const Point p = testing::random_point_in(*m, 0);
    const Jet j = s.eval_function(0, p, c, 4);
    const Jet xp = s.eval_function(0, {p.x + h, p.y}, c, 4), xm = s.eval_function(0, {p.x - h, p.y}, c, 4);
    const Jet yp = s.eval_function(0, {p.x, p.y + h}, c, 4), ym = s.eval_function(0, {p.x, p.y - h}, c, 4);
    for (int order = 1; order <= 4; ++order) {
      for (int q = 0; q <= order; ++q) {
        const double fd = q < order ? (entry(xp, order - 1, q) - entry(xm, order - 1, q)) / (2 * h)
                                    : (entry(yp, order - 1, q - 1) - entry(ym, order - 1, q - 1)) / (2 * h);
        const double exact = entry(j, order, q);
        CHECK(std::abs(exact - fd) <= 1e-6 * std::max(1.0, std::abs(exact)));
      }
    }
  }
}

TEST_CASE("element maps") {
  const auto m = skewed_mesh();
  const DgSpace s(m, 2);
  for (int t = 0; t < m->num_triangles(); ++t) {
    const ElementMap& map = s.element_map(t);
    CHECK(map.det == doctest::Approx(2.0 * m->area(t)));
    const Point p = testing::random_point_in(*m, t);
    const Point back = map.to_physical(map.to_reference(p));
    CHECK(back.x == doctest::Approx(p.x));
    CHECK(back.y == doctest::Approx(p.y));
  }
}

TEST_CASE("evaluation outside the element is rejected") {
  const auto m = skewed_mesh();
  const DgSpace s(m, 2);
  const std::vector<double> c(s.num_dofs(), 1.0);
  CHECK_THROWS_AS(physical_eval(s, 0, {5.0, 5.0}, c), ConfigError);
  CHECK(physical_eval(s, 0, m->vertex(m->triangle(0).v[1]), c).value == doctest::Approx(1.0));
}

TEST_CASE("interpolation samples each element on its own subdomain") {
  const auto m = testing::share(build_structured(Domain::UnitSquare, 2, flat_fold_curve()));
  const DgSpace s(m, 2);
  const auto c = interpolate(s, [](Point, int sub) { return sub == 1 ? -1.0 : 1.0; });
  for (int t = 0; t < m->num_triangles(); ++t)
    CHECK(physical_eval(s, t, m->centroid(t), c).value == doctest::Approx(m->subdomain(t) == 1 ? -1.0 : 1.0));
}
