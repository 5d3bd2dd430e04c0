#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ncsim/engine/event_queue.hpp"
#include "ncsim/engine/trace.hpp"
#include "ncsim/error.hpp"
#include "ncsim/mac/interference.hpp"
#include "ncsim/model.hpp"
#include "ncsim/rf/mcs_table.hpp"
#include "ncsim/rf/phy.hpp"
#include "ncsim/routing/routing.hpp"

namespace ncsim::engine {

inline constexpr std::size_t kDefaultEventCap = 10'000'000;

// Everything a run needs, already validated.
struct SimulationSpec {
  Network network;
  std::vector<DagSpec> dags;
  std::string interference = "none";
  mac::CsmaOptions csma;
  rf::RfConfig rf;
  rf::McsTable mcs = rf::McsTable::default_11ax();
  routing::RoutingModel routing = routing::RoutingModel::WidestPath;
  std::string scheduler = "heft";
  std::uint64_t seed = 0;
  std::size_t max_events = kDefaultEventCap;
};

struct TaskTimeline {
  std::string dag;
  std::string task;
  std::string node;
  double ready = -1.0;
  double start = -1.0;
  double finish = -1.0;
  TaskState state = TaskState::Pending;
};

struct RatePhase {
  double start = 0.0;
  double end = 0.0;
  double rate = 0.0;  // MB/s
};

struct TransferHistory {
  std::int64_t flow = 0;
  std::string dag;
  std::string src_task;
  std::string dst_task;
  std::string src_node;
  std::string dst_node;
  double size_mb = 0.0;
  double start = 0.0;
  double end = -1.0;  // -1 while incomplete
  double latency = 0.0;
  std::vector<std::string> route;  // node ids
  std::vector<RatePhase> phases;
  bool instant = false;  // zero bytes or co-located

  double transferred() const;
};

struct DagResult {
  std::string dag;
  double inject_at = 0.0;
  double finish = -1.0;
};

struct RunMetrics {
  double makespan = 0.0;
  std::vector<DagResult> dags;
  std::vector<TaskTimeline> tasks;
  std::vector<TransferHistory> transfers;
  std::map<std::string, PlacementPlan> plans;
  std::map<std::string, std::string> snapshots;  // dag id -> canonical snapshot at injection
  std::size_t events = 0;
  std::size_t rate_changes = 0;
  std::size_t stale_events = 0;

  const TransferHistory* find_transfer(const std::string& dag, const std::string& src_task,
                                       const std::string& dst_task) const;
  const TaskTimeline* find_task(const std::string& dag, const std::string& task) const;
};

// Queue drained with tasks left incomplete: a zero-rate link or no route.
class DeadlockError : public Error {
 public:
  DeadlockError(std::vector<std::string> stuck, RunMetrics partial);

  const std::vector<std::string>& stuck_tasks() const { return stuck_; }
  const RunMetrics& partial() const { return partial_; }

 private:
  std::vector<std::string> stuck_;
  RunMetrics partial_;
};

// Single-threaded. One instance runs one simulation.
class Engine {
 public:
  explicit Engine(SimulationSpec spec, TraceSink* sink = nullptr);
  ~Engine();
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  // Throws DeadlockError, NonQuiescent, or scheduler errors.
  RunMetrics run();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

RunMetrics simulate(SimulationSpec spec, TraceSink* sink = nullptr);

}  // namespace ncsim::engine
