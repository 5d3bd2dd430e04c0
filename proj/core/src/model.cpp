#include "ncsim/model.hpp"

#include <cmath>
#include <queue>

#include <fmt/format.h>

#include "ncsim/error.hpp"

namespace ncsim {

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::CyclicDag: return "CyclicDag";
    case ViolationKind::UnknownNodeReference: return "UnknownNodeReference";
    case ViolationKind::UnknownTaskReference: return "UnknownTaskReference";
    case ViolationKind::DuplicateId: return "DuplicateId";
    case ViolationKind::MissingPosition: return "MissingPosition";
    case ViolationKind::InvalidValue: return "InvalidValue";
  }
  return "?";
}

namespace {

std::string join_violations(const std::vector<Violation>& violations) {
  std::string out = "scenario validation failed:";
  for (const auto& v : violations) {
    out += fmt::format("\n  [{}] {}", to_string(v.kind), v.message);
  }
  return out;
}

std::uint64_t pair_key(std::size_t a, std::size_t b) {
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(join_violations(violations)), violations_(std::move(violations)) {}

bool ValidationError::has(ViolationKind kind) const {
  for (const auto& v : violations_) {
    if (v.kind == kind) return true;
  }
  return false;
}

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : Error(line ? fmt::format("parse error at line {}, column {}: {}", line, column, message)
                 : "parse error: " + message),
      line_(line),
      column_(column) {}

SchemaError::SchemaError(const std::string& key, const std::string& message)
    : Error(fmt::format("schema error at '{}': {}", key, message)), key_(key) {}

double distance(const Position& a, const Position& b) { return std::hypot(a.x - b.x, a.y - b.y); }

const TaskSpec* DagSpec::find_task(std::string_view task_id) const {
  for (const auto& t : tasks) {
    if (t.id == task_id) return &t;
  }
  return nullptr;
}

DagIndex DagIndex::build(const DagSpec& dag) {
  DagIndex idx;
  const std::size_t n = dag.tasks.size();
  std::unordered_map<std::string, std::size_t> by_id;
  for (std::size_t i = 0; i < n; ++i) by_id.emplace(dag.tasks[i].id, i);

  idx.preds.resize(n);
  idx.succs.resize(n);
  for (std::size_t e = 0; e < dag.edges.size(); ++e) {
    const std::size_t s = by_id.at(dag.edges[e].src_task);
    const std::size_t d = by_id.at(dag.edges[e].dst_task);
    idx.edge_src.push_back(s);
    idx.edge_dst.push_back(d);
    idx.succs[s].push_back(e);
    idx.preds[d].push_back(e);
  }

  std::vector<std::size_t> indegree(n);
  for (std::size_t t = 0; t < n; ++t) indegree[t] = idx.preds[t].size();
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t t = 0; t < n; ++t) {
    if (indegree[t] == 0) ready.push(t);
  }
  while (!ready.empty()) {
    const std::size_t t = ready.top();
    ready.pop();
    idx.topo_order.push_back(t);
    for (std::size_t e : idx.succs[t]) {
      if (--indegree[idx.edge_dst[e]] == 0) ready.push(idx.edge_dst[e]);
    }
  }
  return idx;
}

Network::Network(std::vector<NodeSpec> nodes, std::vector<LinkSpec> links)
    : nodes_(std::move(nodes)), links_(std::move(links)) {
  out_.resize(nodes_.size());
  in_.resize(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) node_by_id_.emplace(nodes_[i].id, i);
  for (std::size_t l = 0; l < links_.size(); ++l) {
    const auto s = node_index(links_[l].src);
    const auto d = node_index(links_[l].dst);
    if (!s || !d) {
      throw Error(fmt::format("link {}->{} references an unknown node", links_[l].src, links_[l].dst));
    }
    link_src_.push_back(*s);
    link_dst_.push_back(*d);
    out_[*s].push_back(l);
    in_[*d].push_back(l);
    link_by_pair_.emplace(pair_key(*s, *d), l);
  }
}

std::optional<std::size_t> Network::node_index(std::string_view id) const {
  const auto it = node_by_id_.find(std::string(id));
  if (it == node_by_id_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Network::link_index(std::size_t src, std::size_t dst) const {
  const auto it = link_by_pair_.find(pair_key(src, dst));
  if (it == link_by_pair_.end()) return std::nullopt;
  return it->second;
}

double Network::link_length(std::size_t link) const {
  const auto& a = nodes_[link_src_[link]];
  const auto& b = nodes_[link_dst_[link]];
  if (!a.position || !b.position) {
    throw MissingPosition(fmt::format("link {}->{} needs positioned endpoints", a.id, b.id));
  }
  return distance(*a.position, *b.position);
}

bool Network::all_positioned() const {
  for (const auto& n : nodes_) {
    if (!n.position) return false;
  }
  return true;
}

const char* to_string(TaskState state) {
  switch (state) {
    case TaskState::Pending: return "Pending";
    case TaskState::Ready: return "Ready";
    case TaskState::Queued: return "Queued";
    case TaskState::Running: return "Running";
    case TaskState::Completed: return "Completed";
  }
  return "?";
}

const char* to_string(TaskEvent event) {
  switch (event) {
    case TaskEvent::InputsDelivered: return "InputsDelivered";
    case TaskEvent::NodeBusy: return "NodeBusy";
    case TaskEvent::NodeIdle: return "NodeIdle";
    case TaskEvent::ExecutionDone: return "ExecutionDone";
  }
  return "?";
}

TaskState transition_task(TaskState state, TaskEvent event) {
  switch (state) {
    case TaskState::Pending:
      if (event == TaskEvent::InputsDelivered) return TaskState::Ready;
      break;
    case TaskState::Ready:
      if (event == TaskEvent::NodeIdle) return TaskState::Running;
      if (event == TaskEvent::NodeBusy) return TaskState::Queued;
      break;
    case TaskState::Queued:
      if (event == TaskEvent::NodeIdle) return TaskState::Running;
      break;
    case TaskState::Running:
      if (event == TaskEvent::ExecutionDone) return TaskState::Completed;
      break;
    case TaskState::Completed:
      break;
  }
  throw IllegalTransition(fmt::format("illegal task transition {} on {}", to_string(state), to_string(event)));
}

std::string NetworkSnapshot::canonical() const {
  std::string out = fmt::format("t={:.6f}\n", time);
  for (const auto& n : nodes) {
    out += fmt::format("node {} cap={:.9g} queue={}\n", n.id, n.capacity, n.queue_depth);
  }
  for (const auto& l : links) {
    out += fmt::format("link {}->{} bw={:.9g} lat={:.9g} active={}\n", l.src, l.dst, l.bandwidth, l.latency,
                       l.active_transfers);
  }
  return out;
}

Network NetworkSnapshot::to_network() const {
  std::vector<NodeSpec> ns;
  ns.reserve(nodes.size());
  for (const auto& n : nodes) ns.push_back(NodeSpec{n.id, n.capacity, std::nullopt});
  std::vector<LinkSpec> ls;
  ls.reserve(links.size());
  for (const auto& l : links) ls.push_back(LinkSpec{l.src, l.dst, l.bandwidth, l.latency});
  return Network(std::move(ns), std::move(ls));
}

NetworkSnapshot make_static_snapshot(const Network& network) {
  NetworkSnapshot snap;
  for (const auto& n : network.nodes()) snap.nodes.push_back({n.id, n.capacity, 0});
  for (const auto& l : network.links()) snap.links.push_back({l.src, l.dst, l.bandwidth, l.latency, 0});
  return snap;
}

const std::string& PlacementPlan::node_for(const std::string& task_id) const {
  const auto it = assignment.find(task_id);
  if (it == assignment.end()) throw Error("placement plan has no entry for task " + task_id);
  return it->second;
}

}  // namespace ncsim
