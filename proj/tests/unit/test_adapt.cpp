#include <doctest.h>

#include <cmath>

#include "foldfem/adapt.hpp"
#include "foldfem/bench.hpp"
#include "helpers.hpp"

using namespace foldfem;

namespace {

std::vector<int> v(std::initializer_list<int> l) { return l; }

AdaptConfig config(int levels, bool uniform = false) {
  AdaptConfig c;
  c.max_levels = levels;
  c.uniform = uniform;
  return c;
}

}  // namespace

TEST_CASE("fixed-fraction marking examples") {
  CHECK(mark(std::vector<double>{4, 3, 2, 1}, 0.5) == v({0, 1}));
  CHECK(mark(std::vector<double>{1, 3, 2, 4}, 0.5) == v({1, 3}));
  CHECK(mark(std::vector<double>{1, 1, 1, 1}, 0.1) == v({0}));
  CHECK(mark(std::vector<double>{2, 5, 5, 1}, 0.25) == v({1}));
  CHECK(mark(std::vector<double>{4, 3, 2, 1}, 1.0) == v({0, 1, 2, 3}));
  CHECK(mark(std::vector<double>{0, 0, 0}, 0.5) == v({0, 1}));
}

TEST_CASE("fixed-fraction marking errors") {
  CHECK_THROWS_AS(mark(std::vector<double>{}, 0.5), ConfigError);
  CHECK_THROWS_AS(mark(std::vector<double>{1, 2}, 0.0), ConfigError);
  CHECK_THROWS_AS(mark(std::vector<double>{1, 2}, 1.5), ConfigError);
  CHECK_THROWS_AS(mark(std::vector<double>{1, -2}, 0.5), ConfigError);
}

TEST_CASE("marked count is ceil(theta N) and covers the largest") {
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(testing::uniform(0, 300));
    const double theta = testing::uniform(0.01, 1.0);
    std::vector<double> ind(n);
    for (double& x : ind) x = testing::uniform(0, 1);
    const auto m = mark(ind, theta);
    CHECK(static_cast<int>(m.size()) == std::max(1, static_cast<int>(std::ceil(theta * n - 1e-9))));
    CHECK(std::is_sorted(m.begin(), m.end()));
    double smallest_marked = 1e300;
    std::vector<bool> is_marked(n, false);
    for (int i : m) {
      smallest_marked = std::min(smallest_marked, ind[i]);
      is_marked[i] = true;
    }
    for (int i = 0; i < n; ++i) {
      if (!is_marked[i]) CHECK(ind[i] <= smallest_marked);
    }
  }
}

TEST_CASE("Dorfler marking") {
  CHECK(mark_dorfler(std::vector<double>{1, 1, 1, 1}, 0.5) == v({0, 1}));
  CHECK(mark_dorfler(std::vector<double>{1, 3, 1, 1}, 0.5) == v({1}));
  CHECK(mark_dorfler(std::vector<double>{1, 3, 1, 1}, 1.0) == v({0, 1, 2, 3}));
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> ind(50);
    for (double& x : ind) x = testing::uniform(0, 1);
    const double theta = testing::uniform(0.1, 0.9);
    const auto m = mark_dorfler(ind, theta);
    double total = 0.0, marked = 0.0, smallest = 1e300;
    for (double x : ind) total += x * x;
    for (int i : m) {
      marked += ind[i] * ind[i];
      smallest = std::min(smallest, ind[i]);
    }
    CHECK(marked >= theta * total * (1 - 1e-12));
    CHECK(marked - smallest * smallest < theta * total);  // minimal
  }
}

TEST_CASE("config validation") {
  AdaptConfig c;
  CHECK_NOTHROW(c.validate());
  c.theta = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = AdaptConfig{};
  c.max_levels = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("adaptive flat fold") {
  const BenchmarkCase bc = case_flat_fold();
  const AdaptResult r = run_adaptive(bc.problem, bc.initial_mesh(), config(6), bc.penalties, 2);
  REQUIRE(r.history.size() == 6);
  for (std::size_t i = 0; i < r.history.size(); ++i) {
    const ConvergenceRow& row = r.history[i];
    CHECK(row.level == static_cast<int>(i));
    CHECK(row.dofs == 6 * row.elements);
    CHECK(row.dg_error.has_value());
    CHECK(*row.eff_index == doctest::Approx(row.eta_tot / *row.dg_error));
    CHECK(row.relative_residual <= 1e-10);
    if (i > 0) {
      CHECK(row.dofs > r.history[i - 1].dofs);
      CHECK(row.eta_tot < r.history[i - 1].eta_tot);
    }
  }
  CHECK(r.final_mesh->num_triangles() == r.history.back().elements);
  r.final_mesh->check_invariants();
}

TEST_CASE("runs are deterministic apart from timing") {
  const BenchmarkCase bc = case_v_fold();
  const AdaptResult a = run_adaptive(bc.problem, bc.initial_mesh(), config(4), bc.penalties, 2);
  const AdaptResult b = run_adaptive(bc.problem, bc.initial_mesh(), config(4), bc.penalties, 2);
  REQUIRE(a.history.size() == b.history.size());
  for (std::size_t i = 0; i < a.history.size(); ++i) {
    CHECK(a.history[i].dofs == b.history[i].dofs);
    CHECK(a.history[i].eta == b.history[i].eta);
    CHECK(a.history[i].eta_tot == b.history[i].eta_tot);
    CHECK(!a.history[i].dg_error.has_value());
  }
  CHECK(*a.final_mesh == *b.final_mesh);
}

TEST_CASE("uniform refinement rate on the flat fold") {
  const BenchmarkCase bc = case_flat_fold();
  const AdaptResult r = run_adaptive(bc.problem, bc.initial_mesh(), config(6, true), bc.penalties, 2);
  REQUIRE(r.history.size() == 6);
  for (std::size_t i = 1; i < r.history.size(); ++i) CHECK(r.history[i].elements == 2 * r.history[i - 1].elements);
  // Two bisection levels halve h; the DG error of P2 is first order in h.
  const auto& a = r.history[1];
  const auto& b = r.history[5];
  const double eoc = std::log(*a.dg_error / *b.dg_error) / std::log(2.0) / 2.0;
  CHECK(eoc > 0.8);
  CHECK(eoc < 1.3);
}

TEST_CASE("dof budget and observer") {
  const BenchmarkCase bc = case_flat_fold();
  AdaptConfig c = config(20, true);
  c.max_dofs = 1000;
  int seen = 0;
  const AdaptResult r = run_adaptive(bc.problem, bc.initial_mesh(), c, bc.penalties, 2, {},
                                     [&](const LevelSnapshot& s) {
                                       CHECK(s.row.level == seen);
                                       CHECK(static_cast<int>(s.coeffs.size()) == s.space.num_dofs());
                                       CHECK(static_cast<int>(s.indicators.size()) == s.space.mesh().num_triangles());
                                       ++seen;
                                     });
  CHECK(seen == static_cast<int>(r.history.size()));
  for (const auto& row : r.history) CHECK(row.dofs <= 1000);
  CHECK(r.history.size() == 3);  // 192, 384, 768; the next level would have 1536
}

TEST_CASE("solver failures carry the level") {
  const BenchmarkCase bc = case_flat_fold();
  try {
    run_adaptive(bc.problem, bc.initial_mesh(), config(2), Penalties{1e-3, 1e-3}, 2);
    FAIL("expected an indefinite system");
  } catch (const IndefiniteMatrixError& e) {
    CHECK(std::string(e.what()).starts_with("level 0: "));
  }
}
