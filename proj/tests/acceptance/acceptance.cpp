// Acceptance suite: one PASS/FAIL line per criterion.
//
// A criterion line reads FAIL when any of its checks fails. Checks flagged
// as known-unattainable (see README) are still reported, marked with "?",
// but do not make the exit status nonzero; every other failed check does.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "foldfem/adapt.hpp"
#include "foldfem/assemble.hpp"
#include "foldfem/bench.hpp"
#include "foldfem/estimate.hpp"
#include "foldfem/theory.hpp"

using namespace foldfem;

namespace {

enum class Check { Required, KnownUnattainable };

struct Outcome {
  bool pass = true;
  bool hard_failure = false;
  std::string detail;

  void require(bool ok, const std::string& what, Check kind = Check::Required) {
    if (!ok) {
      pass = false;
      if (kind == Check::Required) hard_failure = true;
    }
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : kind == Check::Required ? "!" : "?") + what;
  }
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

double max_diameter(const Mesh& m) {
  double h = 0.0;
  for (int t = 0; t < m.num_triangles(); ++t) h = std::max(h, m.diameter(t));
  return h;
}

double distance_to_segment(Point p, Point a, Point b) {
  const Vec2 ab = b - a;
  const double s = std::clamp(dot(p - a, ab) / dot(ab, ab), 0.0, 1.0);
  return distance(p, a + s * ab);
}

double distance_to_triangle(const Mesh& m, int t, Point p) {
  if (m.contains(t, p, 1e-14)) return 0.0;
  const auto& v = m.triangle(t).v;
  double d = 1e300;
  for (int i = 0; i < 3; ++i) d = std::min(d, distance_to_segment(p, m.vertex(v[i]), m.vertex(v[(i + 1) % 3])));
  return d;
}

double loglog_slope(double x0, double y0, double x1, double y1) { return std::log(y1 / y0) / std::log(x1 / x0); }

struct Study {
  std::string label;
  AdaptResult result;
};

// Every solved level of every study feeds criterion 8.
std::vector<const Study*> g_studies;

Study run_study(const std::string& label, const BenchmarkCase& bc, AdaptConfig cfg) {
  Study s{label, run_adaptive(bc.problem, bc.initial_mesh(), cfg, bc.penalties, 2)};
  return s;
}

Outcome criterion_exactness() {
  Outcome out;
  // (a) continuous piecewise-linear folded functions.
  {
    auto exact = [](Point x, int sub) {
      Jet j;
      j.value = 0.3 + 0.2 * x.x - 0.5 * x.y;
      j.d1 = {0.2, -0.5};
      if (sub == 2) {
        j.value += 0.7 * (x.x - 0.5);
        j.d1[0] += 0.7;
      }
      return j;
    };
    const BenchmarkCase bc = manufactured_case("pl_flat", Domain::UnitSquare, 4, flat_fold_curve(), exact,
                                               [](Point, int) { return 0.0; });
    Mesh mesh = bc.initial_mesh();
    double worst = 0.0;
    for (int level = 0; level < 3; ++level) {
      auto m = std::make_shared<const Mesh>(mesh);
      DgSpace space(m, 2);
      const auto sol = solve_problem(space, bc.problem, bc.penalties);
      worst = std::max(worst, dg_error(space, bc.problem, bc.penalties, sol.coeffs));
      mesh = refine_uniform(mesh);
    }
    out.require(worst <= 1e-9, fmt("flat-fold piecewise-linear DG error %.2e", worst));
  }
  {
    // A continuous function that is linear on both sides of a V is linear.
    auto exact = [](Point x, int) {
      Jet j;
      j.value = 0.2 + 0.3 * x.x - 0.4 * x.y;
      j.d1 = {0.3, -0.4};
      return j;
    };
    const BenchmarkCase v = case_v_fold();
    BenchmarkCase bc = manufactured_case("pl_v", Domain::UnitSquare, 4, v_fold_curve(), exact,
                                         [](Point, int) { return 0.0; }, v.penalties, v.problem.dirichlet);
    bc.problem.point_constraints = {{{0.5, 0.0}, exact({0.5, 0.0}, 1).value}};
    Mesh mesh = bc.initial_mesh();
    double worst = 0.0;
    for (int level = 0; level < 3; ++level) {
      auto m = std::make_shared<const Mesh>(mesh);
      DgSpace space(m, 2);
      const auto sol = solve_problem(space, bc.problem, bc.penalties);
      worst = std::max(worst, dg_error(space, bc.problem, bc.penalties, sol.coeffs));
      mesh = refine_uniform(mesh);
    }
    out.require(worst <= 1e-9, fmt("V-fold linear DG error %.2e", worst));
  }
  // (b) u = x2^2 on the flat-fold case.
  {
    auto exact = [](Point x, int) {
      Jet j;
      j.value = x.y * x.y;
      j.d1 = {0.0, 2.0 * x.y};
      j.d2 = {0.0, 0.0, 2.0};
      return j;
    };
    const BenchmarkCase bc = manufactured_case("quad_flat", Domain::UnitSquare, 4, flat_fold_curve(), exact,
                                               [](Point, int) { return 0.0; });
    auto m = std::make_shared<const Mesh>(bc.initial_mesh());
    DgSpace space(m, 2);
    const auto sol = solve_problem(space, bc.problem, bc.penalties);
    const double err = dg_error(space, bc.problem, bc.penalties, sol.coeffs);
    const auto est = compute_estimators(space, bc.problem, sol.coeffs);
    double eta_max = 0.0;
    for (int i = 2; i <= 6; ++i) eta_max = std::max(eta_max, est.eta[i]);
    out.require(err <= 1e-8, fmt("x2^2 DG error %.2e", err));
    out.require(eta_max <= 1e-8, fmt("x2^2 max eta2..eta6 %.2e", eta_max));
  }
  return out;
}

Outcome criterion_flat_convergence(const Study& uniform, const Study& adaptive) {
  Outcome out;
  const auto& u = uniform.result.history;
  // Rebuild the uniform meshes for h; h_max halves every two bisection rounds.
  std::vector<double> h;
  {
    Mesh m = case_flat_fold().initial_mesh();
    for (std::size_t l = 0; l < u.size(); ++l) {
      h.push_back(max_diameter(m));
      if (l + 1 < u.size()) m = refine_uniform(m);
    }
  }
  const std::size_t n = u.size();
  bool ok = n >= 5;
  std::string rates;
  for (std::size_t l = n - 5; ok && l + 2 < n; l += 2) {
    const double eoc = loglog_slope(h[l], *u[l].dg_error, h[l + 2], *u[l + 2].dg_error);
    ok = eoc >= 0.8 && eoc <= 1.2;
    rates += fmt("%.3f ", eoc);
  }
  out.require(ok, "uniform EOC vs h over the last two refinements: " + rates);

  const auto& a = adaptive.result.history;
  const std::size_t m = a.size();
  const double slope = loglog_slope(a[m - 5].dofs, a[m - 5].eta_tot, a[m - 1].dofs, a[m - 1].eta_tot);
  out.require(slope >= -0.65 && slope <= -0.35, fmt("adaptive eta_tot slope vs DoFs %.3f", slope));
  return out;
}

Outcome criterion_reliability(const Study& adaptive) {
  Outcome out;
  const auto& a = adaptive.result.history;
  const double c0 = *a[0].dg_error / a[0].eta_tot;
  double worst_ratio = 0.0, eff_min = 1e300, eff_max = 0.0;
  for (const auto& r : a) {
    worst_ratio = std::max(worst_ratio, *r.dg_error / (c0 * r.eta_tot));
    eff_min = std::min(eff_min, *r.eff_index);
    eff_max = std::max(eff_max, *r.eff_index);
  }
  // Level 0 is dominated by eta_1 ~ h^2 while the error decays like h, so the
  // level-0 constant undershoots the asymptotic one.
  out.require(worst_ratio <= 1.2, fmt("max dg_error / (C0 eta_tot) %.3f", worst_ratio), Check::KnownUnattainable);
  out.require(eff_min >= 1.0 && eff_max <= 10.0, fmt("efficiency index range [%.3f, %.3f]", eff_min, eff_max));
  double lo = 1e300, hi = 0.0;
  for (std::size_t l = a.size() - 3; l < a.size(); ++l) {
    lo = std::min(lo, *a[l].eff_index);
    hi = std::max(hi, *a[l].eff_index);
  }
  out.require((hi - lo) / lo <= 0.5, fmt("last-3 efficiency variation %.1f%%", 100.0 * (hi - lo) / lo));
  return out;
}

Outcome criterion_bubble() {
  Outcome out;
  for (const auto& row : run_bubble_suite(12)) {
    const auto& r = row.report;
    const bool ok = r.worst() <= 1e-12;
    if (!ok || row.direction == BubbleDirection::Normal) {
      // No function has [phi] = 0 on the shared edge and a tangential
      // gradient jump there.
      const Check kind =
          row.direction == BubbleDirection::Tangential ? Check::KnownUnattainable : Check::Required;
      out.require(ok, row.patch + "/" + to_string(row.direction) +
                          fmt(" values %.1e", std::max({r.jump_value, r.average_value, r.average_gradient})) +
                          fmt(" grad-jump %.1e/%.1e", r.gradient_jump_shared, r.gradient_jump_outer),
                  kind);
    }
  }
  return out;
}

Outcome criterion_interface() {
  Outcome out;
  const BenchmarkCase bc = case_flat_fold();
  const ExactSolution& u = *bc.problem.exact;
  const Vec2 n{1.0, 0.0};
  double jump = 0.0, curvature = 0.0, shear = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Point x{0.5, (i + 0.5) / 50.0};
    const Jet left = u(x, 1), right = u(x, 2);
    jump = std::max(jump, std::abs(right.value - left.value));
    curvature = std::max({curvature, norm(left.hessian_times(n)), norm(right.hessian_times(n))});
    shear = std::max(shear, std::abs(dot(right.grad_laplacian() - left.grad_laplacian(), n)));
  }
  out.require(jump <= 1e-10, fmt("[u] %.1e", jump));
  out.require(curvature <= 1e-10, fmt("one-sided d_n grad u %.1e", curvature));
  out.require(shear <= 1e-10, fmt("[d_n Laplace u] %.1e", shear));
  return out;
}

Outcome criterion_adaptive_beats_uniform(const std::vector<std::pair<const Study*, const Study*>>& pairs) {
  Outcome out;
  for (const auto& [adaptive, uniform] : pairs) {
    const auto& u = uniform->result.history.back();
    const ConvergenceRow* best = nullptr;
    for (const auto& r : adaptive->result.history) {
      if (std::abs(r.dofs - u.dofs) <= 0.2 * u.dofs &&
          (!best || std::abs(r.dofs - u.dofs) < std::abs(best->dofs - u.dofs)))
        best = &r;
    }
    if (!best) {
      out.require(false, adaptive->label + ": no adaptive level within 20% of the uniform DoFs");
      continue;
    }
    const double ratio = best->eta_tot / u.eta_tot;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: adaptive %.4e (%d dofs) / uniform %.4e (%d dofs) = %.3f",
                  adaptive->label.c_str(), best->eta_tot, best->dofs, u.eta_tot, u.dofs, ratio);
    out.require(ratio <= 0.8, buf);
  }
  return out;
}

Outcome criterion_localization(const Study& l15) {
  Outcome out;
  const Mesh& m = *l15.result.final_mesh;
  double near = 1e300;
  for (int t = 0; t < m.num_triangles(); ++t) {
    if (distance_to_triangle(m, t, {0.0, 0.0}) <= 0.1) near = std::min(near, m.diameter(t));
  }
  const double ratio = near / max_diameter(m);
  out.require(l15.result.history.back().level == 15, "15 refinement levels");
  out.require(ratio <= 0.125, fmt("min diameter near corner / max diameter %.4f", ratio));
  return out;
}

Outcome criterion_stability() {
  Outcome out;
  {
    const BenchmarkCase bc = case_flat_fold();
    auto m = std::make_shared<const Mesh>(bc.initial_mesh());
    DgSpace space(m, 2);
    bool indefinite = false;
    std::string what = "solved";
    try {
      solve_problem(space, bc.problem, Penalties{1e-3, 1e-3});
    } catch (const IndefiniteMatrixError& e) {
      indefinite = true;
      what = e.what();
    } catch (const NumericalError& e) {
      what = e.what();
    }
    out.require(indefinite, "gamma = 1e-3 flat fold reported indefinite (" + what + ")");
  }
  double worst = 0.0;
  int levels = 0;
  for (const Study* s : g_studies) {
    for (const auto& r : s->result.history) {
      worst = std::max(worst, r.relative_residual);
      ++levels;
    }
  }
  out.require(worst <= 1e-10, fmt("default penalties: worst relative residual %.2e over ", worst) +
                                  std::to_string(levels) + " solved levels");
  return out;
}

Outcome criterion_assembly() {
  Outcome out;
  double asym = 0.0, flip = 0.0, local = 0.0;
  for (const std::string& name : case_names()) {
    const BenchmarkCase bc = case_by_name(name);
    auto m = std::make_shared<const Mesh>(bc.initial_mesh());
    DgSpace space(m, 2);
    const LinearSystem sys = assemble(space, bc.problem, bc.penalties);
    const double scale = sys.matrix.max_abs();
    asym = std::max(asym, sys.matrix.asymmetry() / scale);

    double rhs_scale = 0.0;
    for (double v : sys.rhs) rhs_scale = std::max(rhs_scale, std::abs(v));
    for (int e = 0; e < m->num_edges(); ++e) {
      if (m->edge(e).is_boundary()) continue;
      auto flipped = std::make_shared<const Mesh>(m->with_flipped_orientation(e));
      DgSpace fs(flipped, 2);
      const LinearSystem other = assemble(fs, bc.problem, bc.penalties);
      const SparseSym::Storage diff = sys.matrix.storage() - other.matrix.storage();
      flip = std::max(flip, SparseSym(diff).max_abs() / scale);
      for (std::size_t i = 0; i < sys.rhs.size(); ++i)
        flip = std::max(flip, std::abs(sys.rhs[i] - other.rhs[i]) / std::max(rhs_scale, 1e-300));
    }

    const auto sol = solve_problem(space, bc.problem, bc.penalties);
    const auto est = compute_estimators(space, bc.problem, sol.coeffs);
    const auto ind = local_indicators(est, *m);
    double sum = 0.0;
    for (double v : ind) sum += v * v;
    const double total = est.total() * est.total();
    local = std::max(local, std::abs(sum - total) / total);
  }
  out.require(asym <= 1e-12, fmt("relative asymmetry %.1e", asym));
  out.require(flip <= 1e-12, fmt("orientation-flip change %.1e", flip));
  out.require(local <= 1e-12, fmt("local indicator sum defect %.1e", local));
  return out;
}

}  // namespace

int main() {
  AdaptConfig uniform_cfg;
  uniform_cfg.uniform = true;
  uniform_cfg.max_dofs = 50000;
  AdaptConfig adaptive_cfg;
  adaptive_cfg.theta = 0.1;
  adaptive_cfg.max_dofs = 50000;

  int failures = 0, known = 0;
  auto report = [&](int id, const char* name, const std::function<Outcome()>& check) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.hard_failure = true;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) (o.hard_failure ? failures : known)++;
    std::printf("%s criterion %d (%s): %s%s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(),
                !o.pass && !o.hard_failure ? " [known unattainable]" : "");
    std::fflush(stdout);
  };

  const BenchmarkCase flat = case_flat_fold(), vfold = case_v_fold(), lshape = case_l_shape();
  AdaptConfig cfg = uniform_cfg;
  cfg.max_levels = 7;
  const Study flat_uniform = run_study("flat_fold uniform", flat, cfg);
  cfg = adaptive_cfg;
  cfg.max_levels = 25;
  const Study flat_adaptive = run_study("flat_fold adaptive", flat, cfg);
  cfg = uniform_cfg;
  cfg.max_levels = 20;
  const Study v_uniform = run_study("v_fold uniform", vfold, cfg);
  const Study l_uniform = run_study("l_shape uniform", lshape, cfg);
  cfg = adaptive_cfg;
  cfg.max_levels = 40;
  const Study v_adaptive = run_study("v_fold", vfold, cfg);
  const Study l_adaptive = run_study("l_shape", lshape, cfg);
  cfg.max_levels = 16;
  const Study l15 = run_study("l_shape 15 levels", lshape, cfg);
  g_studies = {&flat_uniform, &flat_adaptive, &v_uniform, &l_uniform, &v_adaptive, &l_adaptive, &l15};

  report(1, "exactness", criterion_exactness);
  report(2, "flat-fold convergence", [&] { return criterion_flat_convergence(flat_uniform, flat_adaptive); });
  report(3, "reliability and efficiency", [&] { return criterion_reliability(flat_adaptive); });
  report(4, "bubble identities", criterion_bubble);
  report(5, "interface conditions", criterion_interface);
  report(6, "adaptive beats uniform",
         [&] { return criterion_adaptive_beats_uniform({{&v_adaptive, &v_uniform}, {&l_adaptive, &l_uniform}}); });
  report(7, "refinement localization", [&] { return criterion_localization(l15); });
  report(8, "stability thresholds", criterion_stability);
  report(9, "assembly properties", criterion_assembly);

  std::printf("%d criteria failed, %d failed only on known-unattainable checks\n", failures, known);
  return failures == 0 ? 0 : 1;
}
