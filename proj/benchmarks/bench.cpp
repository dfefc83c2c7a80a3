#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "paretosdp/density.hpp"
#include "paretosdp/pipeline.hpp"
#include "paretosdp/problem_io.hpp"
#include "paretosdp/relax.hpp"
#include "paretosdp/scalarize.hpp"
#include "paretosdp/sdp_solver.hpp"

using namespace paretosdp;

namespace {

BicriteriaProblem example(int k) {
  return load_problem(std::string(PARETOSDP_DATA_DIR) + "/example" + std::to_string(k) + ".json").problem;
}

void BM_Assemble(benchmark::State& state) {
  const ParametricPOP pop = build_weighted_sum(unit_ball_scaled(example(1)));
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(assemble(pop, d));
  state.counters["moments"] = static_cast<double>(assemble(pop, d).num_moments());
}
BENCHMARK(BM_Assemble)->DenseRange(2, 6)->Unit(benchmark::kMicrosecond);

void BM_SolveWeightedSum(benchmark::State& state) {
  const MomentSDP sdp = assemble(build_weighted_sum(unit_ball_scaled(example(1))), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve(sdp));
}
BENCHMARK(BM_SolveWeightedSum)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_SolveStatic(benchmark::State& state) {
  const BicriteriaProblem p = unit_ball_scaled(example(1));
  const auto cons = feasible_set_constraints(p);
  const Polynomial f = 0.5 * p.f1 + 0.5 * p.f2;
  const MomentSDP sdp = assemble_static(f, cons, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve(sdp));
}
BENCHMARK(BM_SolveStatic)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_RecoverDensity(benchmark::State& state) {
  MomentVector m;
  m.s = static_cast<int>(state.range(0));
  for (int k = 0; k <= m.s; ++k) m.values.push_back(1.0 / (k + 2.0));
  for (auto _ : state) benchmark::DoNotOptimize(recover_density(m));
}
BENCHMARK(BM_RecoverDensity)->Arg(4)->Arg(8)->Arg(12);

void BM_Discretize(benchmark::State& state) {
  const BicriteriaProblem p = example(1);
  PipelineOptions o;
  o.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(discretize(p, Method::WeightedSum, 20, 3, o));
}
BENCHMARK(BM_Discretize)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
