#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "ncsim/engine/engine.hpp"
#include "ncsim/io/manifest.hpp"
#include "ncsim/io/scenario.hpp"

namespace ncsim::experiments {

// build_simulation + simulate.
engine::RunMetrics run_scenario(const io::Scenario& scenario, engine::TraceSink* sink = nullptr);

// Runs job(i) for i in [0, count) on up to `workers` threads. Results come
// back in index order whatever the worker count. The first exception thrown
// by a job is rethrown after all workers stop.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& job);

template <typename T>
std::vector<T> parallel_map(std::size_t count, std::size_t workers, const std::function<T(std::size_t)>& job) {
  std::vector<T> out(count);
  parallel_for(count, workers, [&](std::size_t i) { out[i] = job(i); });
  return out;
}

// 0 means hardware concurrency.
std::size_t resolve_workers(std::size_t requested);

struct SweepRow {
  std::string scenario;
  std::string interference;
  std::string scheduler;
  std::string routing;
  std::uint64_t seed = 0;
  double makespan = -1.0;
  std::size_t events = 0;
  std::string error;  // empty on success
};

// One row per expanded job, in job order. Failures are recorded, not thrown.
std::vector<SweepRow> run_sweep(const io::SweepManifest& manifest, std::size_t workers);

// scenario,interference,scheduler,routing,seed,makespan,events,status
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

}  // namespace ncsim::experiments
