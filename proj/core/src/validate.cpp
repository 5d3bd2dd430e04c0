#include "ncsim/validate.hpp"

#include <cmath>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>

namespace ncsim {

namespace {

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

void check_dag(const DagSpec& dag, const std::unordered_set<std::string>& node_ids,
               std::vector<Violation>& out) {
  std::unordered_map<std::string, std::size_t> task_index;
  for (const auto& t : dag.tasks) {
    if (!task_index.emplace(t.id, task_index.size()).second) {
      out.push_back({ViolationKind::DuplicateId, fmt::format("dag {}: duplicate task id {}", dag.id, t.id)});
    }
    if (!(std::isfinite(t.compute_cost) && t.compute_cost > 0.0)) {
      out.push_back({ViolationKind::InvalidValue,
                     fmt::format("dag {}: task {} compute_cost must be > 0", dag.id, t.id)});
    }
    if (t.pinned_to && !node_ids.count(*t.pinned_to)) {
      out.push_back({ViolationKind::UnknownNodeReference,
                     fmt::format("dag {}: task {} pinned to unknown node {}", dag.id, t.id, *t.pinned_to)});
    }
  }
  if (!(std::isfinite(dag.inject_at) && dag.inject_at >= 0.0)) {
    out.push_back({ViolationKind::InvalidValue, fmt::format("dag {}: inject_at must be >= 0", dag.id)});
  }

  const std::size_t n = task_index.size();
  std::vector<std::vector<std::size_t>> succ(n);
  std::vector<std::size_t> indegree(n, 0);
  bool edges_ok = true;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& e : dag.edges) {
    const auto s = task_index.find(e.src_task);
    const auto d = task_index.find(e.dst_task);
    if (s == task_index.end() || d == task_index.end()) {
      out.push_back({ViolationKind::UnknownTaskReference,
                     fmt::format("dag {}: edge {}->{} references an unknown task", dag.id, e.src_task, e.dst_task)});
      edges_ok = false;
      continue;
    }
    if (!seen.emplace(e.src_task, e.dst_task).second) {
      out.push_back({ViolationKind::DuplicateId,
                     fmt::format("dag {}: duplicate edge {}->{}", dag.id, e.src_task, e.dst_task)});
    }
    if (!finite_nonneg(e.data_size)) {
      out.push_back({ViolationKind::InvalidValue,
                     fmt::format("dag {}: edge {}->{} data_size must be >= 0", dag.id, e.src_task, e.dst_task)});
    }
    succ[s->second].push_back(d->second);
    ++indegree[d->second];
  }
  if (!edges_ok) return;

  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) stack.push_back(i);
  }
  std::size_t visited = 0;
  while (!stack.empty()) {
    const auto t = stack.back();
    stack.pop_back();
    ++visited;
    for (auto v : succ[t]) {
      if (--indegree[v] == 0) stack.push_back(v);
    }
  }
  if (visited != n) {
    out.push_back({ViolationKind::CyclicDag, fmt::format("dag {}: edges contain a cycle", dag.id)});
  }
}

}  // namespace

std::vector<Violation> find_violations(const std::vector<NodeSpec>& nodes, const std::vector<LinkSpec>& links,
                                       const std::vector<DagSpec>& dags, const ValidationOptions& options) {
  std::vector<Violation> out;
  std::unordered_set<std::string> node_ids;
  for (const auto& n : nodes) {
    if (!node_ids.insert(n.id).second) {
      out.push_back({ViolationKind::DuplicateId, "duplicate node id " + n.id});
    }
    if (!(std::isfinite(n.capacity) && n.capacity > 0.0)) {
      out.push_back({ViolationKind::InvalidValue, fmt::format("node {}: capacity must be > 0", n.id)});
    }
    if (options.require_positions && !n.position) {
      out.push_back({ViolationKind::MissingPosition, fmt::format("node {} has no position", n.id)});
    }
  }
  if (options.require_positions) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (std::size_t j = i + 1; j < nodes.size(); ++j) {
        if (nodes[i].position && nodes[j].position && *nodes[i].position == *nodes[j].position) {
          out.push_back({ViolationKind::InvalidValue,
                         fmt::format("nodes {} and {} share a position", nodes[i].id, nodes[j].id)});
        }
      }
    }
  }

  std::set<std::pair<std::string, std::string>> link_pairs;
  for (const auto& l : links) {
    if (!node_ids.count(l.src) || !node_ids.count(l.dst)) {
      out.push_back({ViolationKind::UnknownNodeReference,
                     fmt::format("link {}->{} references an unknown node", l.src, l.dst)});
    }
    if (l.src == l.dst) {
      out.push_back({ViolationKind::InvalidValue, fmt::format("link {}->{} is a self-loop", l.src, l.dst)});
    }
    if (!link_pairs.emplace(l.src, l.dst).second) {
      out.push_back({ViolationKind::DuplicateId, fmt::format("duplicate link {}->{}", l.src, l.dst)});
    }
    if (!finite_nonneg(l.bandwidth) || !finite_nonneg(l.latency)) {
      out.push_back({ViolationKind::InvalidValue,
                     fmt::format("link {}->{}: bandwidth and latency must be >= 0", l.src, l.dst)});
    }
  }

  std::unordered_set<std::string> dag_ids;
  for (const auto& dag : dags) {
    if (!dag_ids.insert(dag.id).second) {
      out.push_back({ViolationKind::DuplicateId, "duplicate dag id " + dag.id});
    }
    check_dag(dag, node_ids, out);
  }
  return out;
}

ValidatedModel validate_scenario(std::vector<NodeSpec> nodes, std::vector<LinkSpec> links, std::vector<DagSpec> dags,
                                 const ValidationOptions& options) {
  auto violations = find_violations(nodes, links, dags, options);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return ValidatedModel{Network(std::move(nodes), std::move(links)), std::move(dags)};
}

std::vector<LinkSpec> expand_undirected(const std::vector<LinkSpec>& undirected) {
  std::vector<LinkSpec> out;
  out.reserve(undirected.size() * 2);
  for (const auto& l : undirected) {
    out.push_back(l);
    out.push_back(LinkSpec{l.dst, l.src, l.bandwidth, l.latency});
  }
  return out;
}

}  // namespace ncsim
