#include "ncsim/sched/schedulers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace ncsim::sched {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool close(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) return a == b;
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

struct MeanCosts {
  std::vector<double> exec;  // per task, averaged over nodes
  double inv_bw = 0.0;       // mean of 1/bw over ordered non-self pairs
  double lat = 0.0;

  double comm(double data) const { return data > 0.0 ? data * inv_bw + lat : 0.0; }
};

MeanCosts mean_costs(const DagSpec& dag, const VirtualNetwork& vn) {
  MeanCosts m;
  const std::size_t n = vn.size();
  for (const auto& t : dag.tasks) {
    double sum = 0.0;
    for (std::size_t v = 0; v < n; ++v) sum += vn.exec_time(t.compute_cost, v);
    m.exec.push_back(sum / static_cast<double>(n));
  }
  if (n > 1) {
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) {
        if (u == v) continue;
        m.inv_bw += 1.0 / vn.bw(u, v);
        m.lat += vn.lat(u, v);
      }
    }
    const double pairs = static_cast<double>(n * (n - 1));
    m.inv_bw /= pairs;
    m.lat /= pairs;
  }
  return m;
}

// Per-node busy intervals kept sorted by start.
class Timeline {
 public:
  explicit Timeline(std::size_t nodes) : slots_(nodes) {}

  double earliest_start(std::size_t node, double ready, double duration) const {
    double candidate = ready;
    for (const auto& [s, e] : slots_[node]) {
      if (candidate + duration <= s + 1e-12) return candidate;
      candidate = std::max(candidate, e);
    }
    return candidate;
  }

  void reserve(std::size_t node, double start, double end) {
    auto& v = slots_[node];
    v.insert(std::upper_bound(v.begin(), v.end(), std::make_pair(start, end)), {start, end});
  }

 private:
  std::vector<std::vector<std::pair<double, double>>> slots_;
};

struct ListState {
  const DagSpec& dag;
  const VirtualNetwork& vn;
  DagIndex idx;
  Timeline timeline;
  std::vector<std::size_t> node_of;
  std::vector<double> finish;

  ListState(const DagSpec& d, const VirtualNetwork& v)
      : dag(d), vn(v), idx(DagIndex::build(d)), timeline(v.size()),
        node_of(d.tasks.size(), std::numeric_limits<std::size_t>::max()), finish(d.tasks.size(), 0.0) {}

  double ready_time(std::size_t task, std::size_t node) const {
    double ready = 0.0;
    for (auto e : idx.preds[task]) {
      const auto p = idx.edge_src[e];
      ready = std::max(ready, finish[p] + vn.comm_cost(node_of[p], node, dag.edges[e].data_size));
    }
    return ready;
  }

  std::pair<double, double> slot_on(std::size_t task, std::size_t node) const {
    const double dur = vn.exec_time(dag.tasks[task].compute_cost, node);
    const double start = timeline.earliest_start(node, ready_time(task, node), dur);
    return {start, start + dur};
  }

  std::vector<std::size_t> candidates(std::size_t task) const {
    const auto& pin = dag.tasks[task].pinned_to;
    if (pin) return {vn.index_of(*pin)};
    std::vector<std::size_t> all(vn.size());
    std::iota(all.begin(), all.end(), 0);
    return all;
  }

  void place(std::size_t task, std::size_t node) {
    const auto [s, e] = slot_on(task, node);
    timeline.reserve(node, s, e);
    node_of[task] = node;
    finish[task] = e;
  }

  // Minimum finish time; ties go to the earlier-declared node.
  void place_min_eft(std::size_t task) {
    std::size_t best = 0;
    double best_eft = kInf;
    for (auto v : candidates(task)) {
      const double eft = slot_on(task, v).second;
      if (eft < best_eft && !close(eft, best_eft)) {
        best_eft = eft;
        best = v;
      }
    }
    place(task, best);
  }

  PlacementPlan plan() const {
    PlacementPlan p;
    for (std::size_t t = 0; t < dag.tasks.size(); ++t) p.assignment[dag.tasks[t].id] = vn.node_ids[node_of[t]];
    return p;
  }
};

}  // namespace

Ranks compute_ranks(const DagSpec& dag, const VirtualNetwork& vn) {
  const auto idx = DagIndex::build(dag);
  const auto mean = mean_costs(dag, vn);
  const std::size_t n = dag.tasks.size();
  Ranks r{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  for (auto it = idx.topo_order.rbegin(); it != idx.topo_order.rend(); ++it) {
    double tail = 0.0;
    for (auto e : idx.succs[*it]) {
      tail = std::max(tail, mean.comm(dag.edges[e].data_size) + r.upward[idx.edge_dst[e]]);
    }
    r.upward[*it] = mean.exec[*it] + tail;
  }
  for (auto t : idx.topo_order) {
    for (auto e : idx.preds[t]) {
      const auto p = idx.edge_src[e];
      r.downward[t] = std::max(r.downward[t], r.downward[p] + mean.exec[p] + mean.comm(dag.edges[e].data_size));
    }
  }
  return r;
}

PlacementPlan schedule_heft(const DagSpec& dag, const VirtualNetwork& vn) {
  const auto ranks = compute_ranks(dag, vn);
  std::vector<std::size_t> order(dag.tasks.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (ranks.upward[a] != ranks.upward[b]) return ranks.upward[a] > ranks.upward[b];
    return dag.tasks[a].id < dag.tasks[b].id;
  });
  ListState st(dag, vn);
  for (auto t : order) st.place_min_eft(t);
  return st.plan();
}

PlacementPlan schedule_cpop(const DagSpec& dag, const VirtualNetwork& vn) {
  const auto ranks = compute_ranks(dag, vn);
  ListState st(dag, vn);
  const auto& idx = st.idx;
  const std::size_t n = dag.tasks.size();
  std::vector<double> prio(n);
  for (std::size_t t = 0; t < n; ++t) prio[t] = ranks.upward[t] + ranks.downward[t];

  auto prefer = [&](std::size_t a, std::size_t b) {
    if (!close(prio[a], prio[b])) return prio[a] > prio[b];
    return dag.tasks[a].id < dag.tasks[b].id;
  };

  std::vector<bool> on_cp(n, false);
  if (n > 0) {
    std::optional<std::size_t> cur;
    for (std::size_t t = 0; t < n; ++t) {
      if (idx.preds[t].empty() && (!cur || prefer(t, *cur))) cur = t;
    }
    // The successor with the highest priority keeps the priority of the entry.
    while (cur) {
      on_cp[*cur] = true;
      std::optional<std::size_t> next;
      for (auto e : idx.succs[*cur]) {
        const auto s = idx.edge_dst[e];
        if (!next || prefer(s, *next)) next = s;
      }
      cur = next;
    }
  }

  std::size_t cp_node = 0;
  double best = kInf;
  for (std::size_t v = 0; v < vn.size(); ++v) {
    double sum = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      if (on_cp[t]) sum += vn.exec_time(dag.tasks[t].compute_cost, v);
    }
    if (sum < best && !close(sum, best)) {
      best = sum;
      cp_node = v;
    }
  }

  std::vector<std::size_t> missing(n);
  std::vector<std::size_t> ready;
  for (std::size_t t = 0; t < n; ++t) {
    missing[t] = idx.preds[t].size();
    if (missing[t] == 0) ready.push_back(t);
  }
  while (!ready.empty()) {
    auto it = std::min_element(ready.begin(), ready.end(), prefer);
    const auto t = *it;
    ready.erase(it);
    if (on_cp[t] && !dag.tasks[t].pinned_to) {
      st.place(t, cp_node);
    } else {
      st.place_min_eft(t);
    }
    for (auto e : idx.succs[t]) {
      if (--missing[idx.edge_dst[e]] == 0) ready.push_back(idx.edge_dst[e]);
    }
  }
  return st.plan();
}

double estimated_makespan(const DagSpec& dag, const VirtualNetwork& vn, const PlacementPlan& plan) {
  ListState st(dag, vn);
  double makespan = 0.0;
  for (auto t : st.idx.topo_order) {
    st.place(t, vn.index_of(plan.node_for(dag.tasks[t].id)));
    makespan = std::max(makespan, st.finish[t]);
  }
  return makespan;
}

}  // namespace ncsim::sched
