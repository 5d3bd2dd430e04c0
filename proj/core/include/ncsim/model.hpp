#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ncsim {

struct Position {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Position&, const Position&) = default;
};

double distance(const Position& a, const Position& b);

struct NodeSpec {
  std::string id;
  double capacity = 0.0;  // compute units per second
  std::optional<Position> position;

  friend bool operator==(const NodeSpec&, const NodeSpec&) = default;
};

// Directed link. Bandwidth in MB/s, latency in seconds.
struct LinkSpec {
  std::string src;
  std::string dst;
  double bandwidth = 0.0;
  double latency = 0.0;

  friend bool operator==(const LinkSpec&, const LinkSpec&) = default;
};

struct TaskSpec {
  std::string id;
  double compute_cost = 0.0;  // compute units
  std::optional<std::string> pinned_to;

  friend bool operator==(const TaskSpec&, const TaskSpec&) = default;
};

struct DagEdge {
  std::string src_task;
  std::string dst_task;
  double data_size = 0.0;  // MB

  friend bool operator==(const DagEdge&, const DagEdge&) = default;
};

struct DagSpec {
  std::string id;
  std::vector<TaskSpec> tasks;
  std::vector<DagEdge> edges;
  double inject_at = 0.0;

  friend bool operator==(const DagSpec&, const DagSpec&) = default;

  const TaskSpec* find_task(std::string_view task_id) const;
};

// Index-based view of a DAG used by schedulers and the engine. Built from a
// DagSpec that already passed validation.
struct DagIndex {
  std::vector<std::vector<std::size_t>> preds;  // edge indices into DagSpec::edges
  std::vector<std::vector<std::size_t>> succs;  // edge indices
  std::vector<std::size_t> edge_src;            // task index per edge
  std::vector<std::size_t> edge_dst;
  std::vector<std::size_t> topo_order;          // Kahn order, ties by declaration

  static DagIndex build(const DagSpec& dag);
};

// Immutable graph of nodes and directed links with index lookups.
class Network {
 public:
  Network() = default;
  Network(std::vector<NodeSpec> nodes, std::vector<LinkSpec> links);

  const std::vector<NodeSpec>& nodes() const { return nodes_; }
  const std::vector<LinkSpec>& links() const { return links_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t link_count() const { return links_.size(); }

  std::optional<std::size_t> node_index(std::string_view id) const;
  std::optional<std::size_t> link_index(std::size_t src, std::size_t dst) const;

  std::size_t link_src(std::size_t link) const { return link_src_[link]; }
  std::size_t link_dst(std::size_t link) const { return link_dst_[link]; }
  const std::vector<std::size_t>& out_links(std::size_t node) const { return out_[node]; }
  const std::vector<std::size_t>& in_links(std::size_t node) const { return in_[node]; }

  // Euclidean length; throws MissingPosition if either endpoint lacks one.
  double link_length(std::size_t link) const;
  bool all_positioned() const;

 private:
  std::vector<NodeSpec> nodes_;
  std::vector<LinkSpec> links_;
  std::unordered_map<std::string, std::size_t> node_by_id_;
  std::vector<std::size_t> link_src_;
  std::vector<std::size_t> link_dst_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  std::unordered_map<std::uint64_t, std::size_t> link_by_pair_;
};

enum class TaskState { Pending, Ready, Queued, Running, Completed };

enum class TaskEvent {
  InputsDelivered,  // last predecessor output arrived
  NodeBusy,         // target node occupied when the task became ready
  NodeIdle,         // target node available to start the task
  ExecutionDone,
};

const char* to_string(TaskState state);
const char* to_string(TaskEvent event);

// Lifecycle Pending -> Ready -> [Queued ->] Running -> Completed.
// Throws IllegalTransition for any other pair.
TaskState transition_task(TaskState state, TaskEvent event);

// What a scheduler is allowed to see. Carries no conflict graph and no
// interference factors.
struct NetworkSnapshot {
  struct NodeView {
    std::string id;
    double capacity = 0.0;
    std::size_t queue_depth = 0;
  };
  struct LinkView {
    std::string src;
    std::string dst;
    double bandwidth = 0.0;
    double latency = 0.0;
    std::size_t active_transfers = 0;
  };

  double time = 0.0;
  std::vector<NodeView> nodes;
  std::vector<LinkView> links;

  // Fixed-format text used to compare snapshots byte for byte.
  std::string canonical() const;
  Network to_network() const;
};

NetworkSnapshot make_static_snapshot(const Network& network);

struct PlacementPlan {
  std::map<std::string, std::string> assignment;  // task id -> node id

  std::size_t size() const { return assignment.size(); }
  const std::string& node_for(const std::string& task_id) const;

  friend bool operator==(const PlacementPlan&, const PlacementPlan&) = default;
};

}  // namespace ncsim
