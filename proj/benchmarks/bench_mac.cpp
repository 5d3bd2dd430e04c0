#include <benchmark/benchmark.h>

#include "ncsim/experiments/topologies.hpp"
#include "ncsim/io/scenario.hpp"
#include "ncsim/mac/bianchi.hpp"
#include "ncsim/mac/conflict_graph.hpp"
#include "ncsim/mac/interference.hpp"
#include "ncsim/rf/phy.hpp"

using namespace ncsim;

static void BM_SolveBianchi(benchmark::State& state) {
  const auto params = mac::bianchi_profile("ofdm-default");
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mac::saturation_throughput(params, n));
}
BENCHMARK(BM_SolveBianchi)->Arg(2)->Arg(8)->Arg(64);

static Network rgg_network(std::size_t nodes, double side) {
  return io::build_simulation(experiments::rgg_scenario(nodes, side, 80.0, 42)).network;
}

static void BM_ConflictGraph(benchmark::State& state) {
  const auto net = rgg_network(static_cast<std::size_t>(state.range(0)), 500.0);
  const double cs = rf::carrier_sense_range({});
  for (auto _ : state) benchmark::DoNotOptimize(mac::build_conflict_graph(net, cs, false));
  state.counters["links"] = static_cast<double>(net.link_count());
}
BENCHMARK(BM_ConflictGraph)->Arg(50)->Arg(100)->Unit(benchmark::kMicrosecond);

// Factor of one link with every other link active; the efficiency memo is
// warm after the first iteration.
static void BM_CsmaFactor(benchmark::State& state) {
  const auto net = rgg_network(100, 500.0);
  mac::CsmaBianchi model(net, {}, rf::McsTable::default_11ax());
  std::vector<std::size_t> active(net.link_count());
  for (std::size_t l = 0; l < active.size(); ++l) active[l] = l;
  std::size_t link = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.factor(link, active));
    link = (link + 1) % active.size();
  }
}
BENCHMARK(BM_CsmaFactor)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
