#include "foldfem/adapt.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

namespace foldfem {

namespace {

void check_marking_input(std::span<const double> indicators, double theta) {
  if (indicators.empty()) throw ConfigError("cannot mark an empty indicator list");
  if (!(theta > 0.0 && theta <= 1.0)) throw ConfigError("theta must lie in (0, 1]");
  for (double v : indicators) {
    if (!(v >= 0.0)) throw ConfigError("indicators must be nonnegative");
  }
}

std::vector<int> ranked(std::span<const double> indicators) {
  std::vector<int> order(indicators.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return indicators[a] > indicators[b]; });
  return order;
}

}  // namespace

std::vector<int> mark(std::span<const double> indicators, double theta) {
  check_marking_input(indicators, theta);
  const auto n = indicators.size();
  // Guard against theta * n landing a hair above an integer.
  auto count = static_cast<std::size_t>(std::ceil(theta * static_cast<double>(n) - 1e-9));
  count = std::clamp<std::size_t>(count, 1, n);
  std::vector<int> order = ranked(indicators);
  order.resize(count);
  std::sort(order.begin(), order.end());
  return order;
}

std::vector<int> mark_dorfler(std::span<const double> indicators, double theta) {
  check_marking_input(indicators, theta);
  double total = 0.0;
  for (double v : indicators) total += v * v;
  std::vector<int> order = ranked(indicators);
  std::size_t count = 0;
  double acc = 0.0;
  while (count < order.size() && (count == 0 || acc < theta * total)) {
    acc += indicators[order[count]] * indicators[order[count]];
    ++count;
  }
  order.resize(count);
  std::sort(order.begin(), order.end());
  return order;
}

void AdaptConfig::validate() const {
  if (!(theta > 0.0 && theta <= 1.0)) throw ConfigError("theta must lie in (0, 1]");
  if (max_levels < 1) throw ConfigError("max_levels must be at least 1");
  if (max_dofs < 1) throw ConfigError("max_dofs must be positive");
}

AdaptResult run_adaptive(const ProblemSpec& prob, Mesh initial, const AdaptConfig& cfg, const Penalties& pen,
                         int k, SolveOptions solve, const LevelObserver& observer) {
  cfg.validate();
  pen.validate();
  AdaptResult result;
  auto mesh = std::make_shared<const Mesh>(std::move(initial));
  for (int level = 0; level < cfg.max_levels; ++level) {
    const auto start = std::chrono::steady_clock::now();
    DgSpace space(mesh, k);
    if (level > 0 && space.num_dofs() > cfg.max_dofs) break;

    ConvergenceRow row;
    row.level = level;
    row.elements = mesh->num_triangles();
    row.dofs = space.num_dofs();
    DiscreteSolution sol;
    try {
      sol = solve_problem(space, prob, pen, solve);
    } catch (const IndefiniteMatrixError& e) {
      throw IndefiniteMatrixError("level " + std::to_string(level) + ": " + e.what());
    } catch (const NumericalError& e) {
      throw NumericalError("level " + std::to_string(level) + ": " + e.what());
    }
    row.relative_residual = sol.report.relative_residual;

    const EstimatorReport est = compute_estimators(space, prob, sol.coeffs, cfg.variant);
    for (int i = 1; i <= 6; ++i) row.eta[i] = est.eta[i];
    row.eta_tot = est.total();
    if (prob.exact) {
      row.dg_error = dg_error(space, prob, pen, sol.coeffs);
      if (*row.dg_error > 0.0) row.eff_index = row.eta_tot / *row.dg_error;
    }
    const std::vector<double> indicators = local_indicators(est, *mesh);
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    result.history.push_back(row);
    result.final_mesh = mesh;
    if (observer) observer(LevelSnapshot{result.history.back(), space, sol.coeffs, est, indicators});

    if (level + 1 == cfg.max_levels) break;
    std::vector<int> marked;
    if (cfg.uniform) {
      marked.resize(mesh->num_triangles());
      std::iota(marked.begin(), marked.end(), 0);
    } else if (cfg.marking == Marking::Dorfler) {
      marked = mark_dorfler(indicators, cfg.theta);
    } else {
      marked = mark(indicators, cfg.theta);
    }
    mesh = std::make_shared<const Mesh>(refine(*mesh, marked));
  }
  return result;
}

}  // namespace foldfem
