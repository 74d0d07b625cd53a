#include <benchmark/benchmark.h>

#include "foldfem/adapt.hpp"
#include "foldfem/assemble.hpp"
#include "foldfem/bench.hpp"
#include "foldfem/estimate.hpp"

using namespace foldfem;

namespace {

std::shared_ptr<const Mesh> flat_mesh(int levels) {
  Mesh m = case_flat_fold().initial_mesh();
  for (int i = 0; i < levels; ++i) m = refine_uniform(m);
  return std::make_shared<const Mesh>(std::move(m));
}

Penalties penalties_for(int k) {
  if (k == 2) return {30.0, 30.0};
  if (k == 3) return {150.0, 150.0};
  return {5000.0, 300.0};
}

void BM_Assemble(benchmark::State& state) {
  const BenchmarkCase bc = case_flat_fold();
  const int k = static_cast<int>(state.range(0));
  const DgSpace space(flat_mesh(static_cast<int>(state.range(1))), k);
  for (auto _ : state) benchmark::DoNotOptimize(assemble(space, bc.problem, penalties_for(k)));
  state.counters["dofs"] = space.num_dofs();
}
BENCHMARK(BM_Assemble)->ArgsProduct({{2, 3, 4}, {2, 4}})->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State& state) {
  const BenchmarkCase bc = case_flat_fold();
  const DgSpace space(flat_mesh(static_cast<int>(state.range(0))), 2);
  const LinearSystem sys = assemble(space, bc.problem, bc.penalties);
  SolveOptions opt;
  opt.method = state.range(1) == 0 ? SolveMethod::Direct : SolveMethod::Cg;
  opt.block_size = space.dofs_per_element();
  for (auto _ : state) benchmark::DoNotOptimize(solve_spd(sys.matrix, sys.rhs, opt));
  state.counters["dofs"] = space.num_dofs();
}
BENCHMARK(BM_Solve)->ArgsProduct({{2, 4, 6}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_Estimate(benchmark::State& state) {
  const BenchmarkCase bc = case_flat_fold();
  const DgSpace space(flat_mesh(static_cast<int>(state.range(0))), 2);
  const DiscreteSolution sol = solve_problem(space, bc.problem, bc.penalties);
  for (auto _ : state) {
    const EstimatorReport r = compute_estimators(space, bc.problem, sol.coeffs);
    benchmark::DoNotOptimize(local_indicators(r, space.mesh()));
  }
}
BENCHMARK(BM_Estimate)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Refine(benchmark::State& state) {
  const auto mesh = flat_mesh(static_cast<int>(state.range(0)));
  std::vector<double> ind(mesh->num_triangles());
  for (int t = 0; t < mesh->num_triangles(); ++t) ind[t] = mesh->centroid(t).x;  // bias towards x1 = 1
  const auto marked = mark(ind, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(refine(*mesh, marked));
}
BENCHMARK(BM_Refine)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
