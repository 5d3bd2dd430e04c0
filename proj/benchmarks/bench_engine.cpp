#include <benchmark/benchmark.h>

#include "ncsim/engine/engine.hpp"
#include "ncsim/experiments/dag_templates.hpp"
#include "ncsim/experiments/topologies.hpp"
#include "ncsim/io/scenario.hpp"

using namespace ncsim;

static engine::SimulationSpec grid_spec(std::size_t side, const std::string& interference) {
  auto s = experiments::grid_scenario(side, side);
  s.dags = {experiments::diamond_dag()};
  s.interference = interference;
  return io::build_simulation(s);
}

static void BM_GridDiamond(benchmark::State& state) {
  const auto spec = grid_spec(static_cast<std::size_t>(state.range(0)), state.range(1) ? "csma_bianchi" : "none");
  for (auto _ : state) benchmark::DoNotOptimize(engine::simulate(spec).makespan);
}
BENCHMARK(BM_GridDiamond)->ArgsProduct({{2, 3, 4}, {0, 1}})->Unit(benchmark::kMillisecond);

static void BM_RggPipeline(benchmark::State& state) {
  auto s = experiments::rgg_scenario(100, 500.0, 80.0, 42);
  s.dags = {experiments::pipeline_dag(static_cast<std::size_t>(state.range(0)))};
  s.interference = "csma_bianchi";
  const auto spec = io::build_simulation(s);
  for (auto _ : state) benchmark::DoNotOptimize(engine::simulate(spec).makespan);
}
BENCHMARK(BM_RggPipeline)->Arg(30)->Arg(50)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
