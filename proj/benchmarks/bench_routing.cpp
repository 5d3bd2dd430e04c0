#include <benchmark/benchmark.h>

#include "ncsim/experiments/topologies.hpp"
#include "ncsim/io/scenario.hpp"
#include "ncsim/routing/routing.hpp"

using namespace ncsim;

static void run_routes(benchmark::State& state, routing::RoutingModel model) {
  const auto net =
      io::build_simulation(experiments::rgg_scenario(static_cast<std::size_t>(state.range(0)), 500.0, 80.0, 42))
          .network;
  std::size_t dst = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(routing::routes_to(model, net, dst));
    dst = (dst + 1) % net.node_count();
  }
}

static void BM_WidestAllSources(benchmark::State& state) { run_routes(state, routing::RoutingModel::WidestPath); }
static void BM_ShortestAllSources(benchmark::State& state) { run_routes(state, routing::RoutingModel::ShortestPath); }

BENCHMARK(BM_WidestAllSources)->Arg(50)->Arg(100)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ShortestAllSources)->Arg(50)->Arg(100)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
