#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "foldfem/assemble.hpp"
#include "foldfem/estimate.hpp"
#include "foldfem/mesh.hpp"
#include "foldfem/problem.hpp"

namespace foldfem {

/// The ceil(theta * N) elements with the largest indicator, ties to the
/// smaller id; returned in increasing id order.
std::vector<int> mark(std::span<const double> indicators, double theta);

/// Smallest set (largest indicators first, ties to the smaller id) whose
/// squared indicators reach theta times the total; increasing id order.
std::vector<int> mark_dorfler(std::span<const double> indicators, double theta);

enum class Marking { FixedFraction, Dorfler };

struct AdaptConfig {
  double theta = 0.1;
  int max_levels = 10;
  long max_dofs = 200000;
  bool uniform = false;
  EstimatorVariant variant = EstimatorVariant::WithEta1;
  Marking marking = Marking::FixedFraction;

  void validate() const;
};

struct ConvergenceRow {
  int level = 0;
  int elements = 0;
  int dofs = 0;
  std::array<double, 7> eta{};  // eta[1] .. eta[6]
  double eta_tot = 0.0;
  std::optional<double> dg_error;
  std::optional<double> eff_index;  // eta_tot / dg_error
  double relative_residual = 0.0;
  double wall_ms = 0.0;
};

using ConvergenceHistory = std::vector<ConvergenceRow>;

/// Everything known about one solved level, passed to the observer before
/// the mesh is refined.
struct LevelSnapshot {
  const ConvergenceRow& row;
  const DgSpace& space;
  std::span<const double> coeffs;
  const EstimatorReport& estimators;
  std::span<const double> indicators;
};
using LevelObserver = std::function<void(const LevelSnapshot&)>;

struct AdaptResult {
  ConvergenceHistory history;
  std::shared_ptr<const Mesh> final_mesh;  // mesh of the last solved level
};

/// Solve, estimate, record, mark, refine. Stops after max_levels solved
/// levels, or before solving a level with more than max_dofs unknowns (level
/// 0 is always solved). Solver failures are rethrown with the level in the
/// message, keeping their type.
AdaptResult run_adaptive(const ProblemSpec& prob, Mesh initial, const AdaptConfig& cfg, const Penalties& pen,
                         int k, SolveOptions solve = {}, const LevelObserver& observer = {});

}  // namespace foldfem
