#pragma once

#include <memory>
#include <string>

#include "ncsim/model.hpp"
#include "ncsim/routing/routing.hpp"
#include "ncsim/sched/virtual_network.hpp"

namespace ncsim::sched {

// Schedulers see a NetworkSnapshot and nothing else: no conflict graph and
// no interference factors.
class Scheduler {
 public:
  virtual ~Scheduler() = default;
  virtual std::string name() const = 0;
  virtual PlacementPlan schedule(const DagSpec& dag, const NetworkSnapshot& snapshot) const = 0;
};

// Throws UnpinnedTask.
PlacementPlan schedule_manual(const DagSpec& dag);
PlacementPlan schedule_round_robin(const DagSpec& dag, const NetworkSnapshot& snapshot);
PlacementPlan schedule_heft(const DagSpec& dag, const VirtualNetwork& vn);
PlacementPlan schedule_cpop(const DagSpec& dag, const VirtualNetwork& vn);

// Upward and downward ranks from mean costs over the virtual network.
struct Ranks {
  std::vector<double> upward;
  std::vector<double> downward;
};
Ranks compute_ranks(const DagSpec& dag, const VirtualNetwork& vn);

// Finish time of `plan` under the scheduler's own cost model, serving each
// node's tasks in topological order.
double estimated_makespan(const DagSpec& dag, const VirtualNetwork& vn, const PlacementPlan& plan);

// "manual", "round_robin", "heft", "cpop". Throws std::invalid_argument.
std::unique_ptr<Scheduler> make_scheduler(const std::string& name, routing::RoutingModel routing);

}  // namespace ncsim::sched
