#pragma once

#include <memory>
#include <random>
#include <vector>

#include "foldfem/bench.hpp"
#include "foldfem/mesh.hpp"
#include "foldfem/space.hpp"

namespace testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(12345);
  return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

/// Random point strictly inside triangle t.
inline foldfem::Point random_point_in(const foldfem::Mesh& m, int t) {
  double a = uniform(0.05, 0.9), b = uniform(0.05, 0.9);
  if (a + b > 0.95) {
    a = 0.95 - a;
    b = 0.95 - b;
    if (a < 0.02) a = 0.02;
    if (b < 0.02) b = 0.02;
  }
  const auto& v = m.triangle(t).v;
  const foldfem::Point p0 = m.vertex(v[0]), p1 = m.vertex(v[1]), p2 = m.vertex(v[2]);
  return p0 + a * (p1 - p0) + b * (p2 - p0);
}

inline std::shared_ptr<const foldfem::Mesh> share(foldfem::Mesh m) {
  return std::make_shared<const foldfem::Mesh>(std::move(m));
}

inline foldfem::Mesh single_triangle() {
  return foldfem::Mesh::from_triangles({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}}, nullptr);
}

}  // namespace testing
