#include "ncsim/sched/schedulers.hpp"

#include <stdexcept>

#include "ncsim/error.hpp"

namespace ncsim::sched {

PlacementPlan schedule_manual(const DagSpec& dag) {
  PlacementPlan plan;
  for (const auto& t : dag.tasks) {
    if (!t.pinned_to) throw UnpinnedTask("dag " + dag.id + ": task " + t.id + " has no pinned_to");
    plan.assignment[t.id] = *t.pinned_to;
  }
  return plan;
}

PlacementPlan schedule_round_robin(const DagSpec& dag, const NetworkSnapshot& snapshot) {
  if (snapshot.nodes.empty()) throw Error("round robin needs at least one node");
  PlacementPlan plan;
  std::size_t next = 0;
  for (const auto& t : dag.tasks) {
    if (t.pinned_to) {
      plan.assignment[t.id] = *t.pinned_to;
      continue;
    }
    plan.assignment[t.id] = snapshot.nodes[next].id;
    next = (next + 1) % snapshot.nodes.size();
  }
  return plan;
}

namespace {

class ManualScheduler final : public Scheduler {
 public:
  std::string name() const override { return "manual"; }
  PlacementPlan schedule(const DagSpec& dag, const NetworkSnapshot&) const override { return schedule_manual(dag); }
};

class RoundRobinScheduler final : public Scheduler {
 public:
  std::string name() const override { return "round_robin"; }
  PlacementPlan schedule(const DagSpec& dag, const NetworkSnapshot& snapshot) const override {
    return schedule_round_robin(dag, snapshot);
  }
};

class HeftScheduler final : public Scheduler {
 public:
  explicit HeftScheduler(routing::RoutingModel routing) : routing_(routing) {}
  std::string name() const override { return "heft"; }
  PlacementPlan schedule(const DagSpec& dag, const NetworkSnapshot& snapshot) const override {
    return schedule_heft(dag, build_virtual_network(snapshot, routing_));
  }

 private:
  routing::RoutingModel routing_;
};

class CpopScheduler final : public Scheduler {
 public:
  explicit CpopScheduler(routing::RoutingModel routing) : routing_(routing) {}
  std::string name() const override { return "cpop"; }
  PlacementPlan schedule(const DagSpec& dag, const NetworkSnapshot& snapshot) const override {
    return schedule_cpop(dag, build_virtual_network(snapshot, routing_));
  }

 private:
  routing::RoutingModel routing_;
};

}  // namespace

std::unique_ptr<Scheduler> make_scheduler(const std::string& name, routing::RoutingModel routing) {
  if (name == "manual") return std::make_unique<ManualScheduler>();
  if (name == "round_robin") return std::make_unique<RoundRobinScheduler>();
  if (name == "heft") return std::make_unique<HeftScheduler>(routing);
  if (name == "cpop") return std::make_unique<CpopScheduler>(routing);
  throw std::invalid_argument("unknown scheduler '" + name + "'");
}

}  // namespace ncsim::sched
