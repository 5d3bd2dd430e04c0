#include "ncsim/experiments/batch.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include <fmt/format.h>

namespace ncsim::experiments {

engine::RunMetrics run_scenario(const io::Scenario& scenario, engine::TraceSink* sink) {
  return engine::simulate(io::build_simulation(scenario), sink);
}

std::size_t resolve_workers(std::size_t requested) {
  if (requested > 0) return requested;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& job) {
  workers = std::min(resolve_workers(workers), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        job(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<SweepRow> run_sweep(const io::SweepManifest& manifest, std::size_t workers) {
  const auto jobs = io::expand_manifest(manifest);
  return parallel_map<SweepRow>(jobs.size(), workers, [&](std::size_t i) {
    SweepRow row;
    row.scenario = jobs[i].scenario.filename().string();
    try {
      auto scenario = io::load_scenario(jobs[i].scenario);
      io::apply_overrides(scenario, jobs[i].overrides);
      row.interference = scenario.interference;
      row.scheduler = scenario.scheduler;
      row.routing = scenario.routing;
      row.seed = io::effective_seed(scenario);
      const auto metrics = run_scenario(scenario);
      row.makespan = metrics.makespan;
      row.events = metrics.events;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    return row;
  });
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "scenario,interference,scheduler,routing,seed,makespan,events,status\n";
  for (const auto& r : rows) {
    std::string status = "ok";
    if (!r.error.empty()) {
      status = "\"error: ";
      for (char c : r.error) {
        if (c == '"') status += '"';
        status += c == '\n' ? ' ' : c;
      }
      status += '"';
    }
    out += fmt::format("{},{},{},{},{},{:.6f},{},{}\n", r.scenario, r.interference, r.scheduler, r.routing, r.seed,
                       r.makespan, r.events, status);
  }
  return out;
}

}  // namespace ncsim::experiments
