#include "ncsim/engine/engine.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include <fmt/format.h>

#include "ncsim/sched/schedulers.hpp"

namespace ncsim::engine {

double TransferHistory::transferred() const {
  double sum = 0.0;
  for (const auto& p : phases) sum += p.rate * (p.end - p.start);
  return instant ? size_mb : sum;
}

const TransferHistory* RunMetrics::find_transfer(const std::string& dag, const std::string& src_task,
                                                 const std::string& dst_task) const {
  for (const auto& t : transfers) {
    if (t.dag == dag && t.src_task == src_task && t.dst_task == dst_task) return &t;
  }
  return nullptr;
}

const TaskTimeline* RunMetrics::find_task(const std::string& dag, const std::string& task) const {
  for (const auto& t : tasks) {
    if (t.dag == dag && t.task == task) return &t;
  }
  return nullptr;
}

namespace {

std::string join_stuck(const std::vector<std::string>& stuck) {
  std::string out = "deadlock: no pending events but tasks incomplete:";
  for (std::size_t i = 0; i < stuck.size() && i < 20; ++i) out += " " + stuck[i];
  if (stuck.size() > 20) out += fmt::format(" ... ({} total)", stuck.size());
  return out;
}

}  // namespace

DeadlockError::DeadlockError(std::vector<std::string> stuck, RunMetrics partial)
    : Error(join_stuck(stuck)), stuck_(std::move(stuck)), partial_(std::move(partial)) {}

struct Engine::Impl {
  struct TaskRun {
    std::size_t node = 0;
    std::size_t inputs_left = 0;
    TaskState state = TaskState::Pending;
    std::int64_t ready_us = -1;
    std::int64_t start_us = -1;
    std::int64_t finish_us = -1;
  };

  struct DagRun {
    DagIndex idx;
    std::vector<TaskRun> tasks;
    std::vector<std::uint64_t> ready_rank;
    std::size_t completed = 0;
    bool injected = false;
  };

  struct NodeRun {
    bool busy = false;
    std::deque<std::pair<std::size_t, std::size_t>> fifo;
  };

  struct Flow {
    std::size_t dag = 0;
    std::size_t edge = 0;
    routing::Route route;
    double total = 0.0;
    double transferred = 0.0;
    double rate = 0.0;
    double since = 0.0;
    double data_end = 0.0;
    std::optional<std::uint64_t> completion;
    bool active = false;
    bool rated = false;
  };

  SimulationSpec spec;
  TraceSink* sink;
  std::unique_ptr<sched::Scheduler> scheduler;
  std::unique_ptr<mac::InterferenceModel> interference;

  EventQueue queue;
  std::int64_t now_us = 0;
  std::vector<DagRun> dags;
  std::vector<NodeRun> nodes;
  std::vector<Flow> flows;
  std::vector<std::size_t> link_flows;
  std::vector<std::size_t> active_links;  // sorted links with at least one flow
  std::map<std::pair<std::size_t, std::size_t>, std::optional<routing::Route>> route_cache;
  RunMetrics metrics;

  Impl(SimulationSpec s, TraceSink* t) : spec(std::move(s)), sink(t) {
    scheduler = sched::make_scheduler(spec.scheduler, spec.routing);
    interference = mac::make_interference(spec.interference, spec.network, spec.rf, spec.mcs, spec.csma);
    nodes.resize(spec.network.node_count());
    link_flows.assign(spec.network.link_count(), 0);

    // Equal-time TaskReady events are ordered by (dag id, task id).
    std::vector<std::tuple<std::string, std::string, std::size_t, std::size_t>> keys;
    for (std::size_t d = 0; d < spec.dags.size(); ++d) {
      for (std::size_t t = 0; t < spec.dags[d].tasks.size(); ++t) {
        keys.emplace_back(spec.dags[d].id, spec.dags[d].tasks[t].id, d, t);
      }
    }
    std::sort(keys.begin(), keys.end());
    dags.resize(spec.dags.size());
    for (std::size_t d = 0; d < spec.dags.size(); ++d) {
      dags[d].idx = DagIndex::build(spec.dags[d]);
      dags[d].tasks.resize(spec.dags[d].tasks.size());
      dags[d].ready_rank.resize(spec.dags[d].tasks.size());
      for (std::size_t t = 0; t < dags[d].tasks.size(); ++t) {
        dags[d].tasks[t].inputs_left = dags[d].idx.preds[t].size();
      }
    }
    for (std::size_t k = 0; k < keys.size(); ++k) {
      dags[std::get<2>(keys[k])].ready_rank[std::get<3>(keys[k])] = k;
    }
  }

  double now() const { return from_micros(now_us); }
  const DagSpec& dag_spec(std::size_t d) const { return spec.dags[d]; }
  const std::string& node_id(std::size_t v) const { return spec.network.nodes()[v].id; }

  std::string link_name(std::size_t l) const {
    return node_id(spec.network.link_src(l)) + "->" + node_id(spec.network.link_dst(l));
  }

  void emit(TraceEvent ev) {
    if (!sink) return;
    ev.t_us = now_us;
    sink->write(ev);
  }

  TraceEvent task_event(const char* kind, std::size_t d, std::size_t t) const {
    TraceEvent ev;
    ev.kind = kind;
    ev.dag = dag_spec(d).id;
    ev.task = dag_spec(d).tasks[t].id;
    ev.node = node_id(dags[d].tasks[t].node);
    return ev;
  }

  NetworkSnapshot snapshot() const {
    NetworkSnapshot snap;
    snap.time = now();
    for (std::size_t v = 0; v < nodes.size(); ++v) {
      const auto& n = spec.network.nodes()[v];
      snap.nodes.push_back({n.id, n.capacity, nodes[v].fifo.size()});
    }
    for (std::size_t l = 0; l < spec.network.link_count(); ++l) {
      const auto& k = spec.network.links()[l];
      snap.links.push_back({k.src, k.dst, k.bandwidth, k.latency, link_flows[l]});
    }
    return snap;
  }

  void on_dag_inject(std::size_t d) {
    const auto& dag = dag_spec(d);
    const auto snap = snapshot();
    metrics.snapshots[dag.id] = snap.canonical();
    PlacementPlan plan = scheduler->schedule(dag, snap);
    if (plan.size() != dag.tasks.size()) {
      throw Error(fmt::format("scheduler {} returned {} placements for {} tasks", scheduler->name(), plan.size(),
                              dag.tasks.size()));
    }
    for (std::size_t t = 0; t < dag.tasks.size(); ++t) {
      const auto& target = plan.node_for(dag.tasks[t].id);
      const auto v = spec.network.node_index(target);
      if (!v) throw Error("placement names unknown node " + target);
      if (dag.tasks[t].pinned_to && *dag.tasks[t].pinned_to != target) {
        throw Error(fmt::format("scheduler {} moved pinned task {}", scheduler->name(), dag.tasks[t].id));
      }
      dags[d].tasks[t].node = *v;
    }
    dags[d].injected = true;

    TraceEvent ev;
    ev.kind = "dag_inject";
    ev.dag = dag.id;
    std::vector<std::pair<std::string, std::string>> placement;
    for (const auto& t : dag.tasks) placement.emplace_back(t.id, plan.node_for(t.id));
    ev.detail.push_back({"scheduler", scheduler->name()});
    ev.detail.push_back({"placement", std::move(placement)});
    emit(std::move(ev));
    metrics.plans[dag.id] = std::move(plan);

    for (std::size_t t = 0; t < dag.tasks.size(); ++t) {
      if (dags[d].idx.preds[t].empty()) queue.push(now_us, EventKind::TaskReady, d, t, dags[d].ready_rank[t]);
    }
  }

  void on_task_ready(std::size_t d, std::size_t t) {
    auto& task = dags[d].tasks[t];
    task.state = transition_task(task.state, TaskEvent::InputsDelivered);
    task.ready_us = now_us;
    auto& node = nodes[task.node];
    auto ev = task_event("task_ready", d, t);
    if (!node.busy) {
      node.busy = true;
      queue.push(now_us, EventKind::TaskStart, d, t);
      ev.detail.push_back({"queued", false});
    } else {
      task.state = transition_task(task.state, TaskEvent::NodeBusy);
      node.fifo.emplace_back(d, t);
      ev.detail.push_back({"queued", true});
      ev.detail.push_back({"queue_depth", static_cast<std::int64_t>(node.fifo.size())});
    }
    emit(std::move(ev));
  }

  void on_task_start(std::size_t d, std::size_t t) {
    auto& task = dags[d].tasks[t];
    task.state = transition_task(task.state, TaskEvent::NodeIdle);
    task.start_us = now_us;
    const double duration = dag_spec(d).tasks[t].compute_cost / spec.network.nodes()[task.node].capacity;
    queue.push(now_us + to_micros(duration), EventKind::TaskComplete, d, t);
    auto ev = task_event("task_start", d, t);
    ev.detail.push_back({"duration", duration, 6});
    emit(std::move(ev));
  }

  void on_task_complete(std::size_t d, std::size_t t) {
    auto& task = dags[d].tasks[t];
    task.state = transition_task(task.state, TaskEvent::ExecutionDone);
    task.finish_us = now_us;
    ++dags[d].completed;
    emit(task_event("task_complete", d, t));

    auto& node = nodes[task.node];
    if (!node.fifo.empty()) {
      const auto [nd, nt] = node.fifo.front();
      node.fifo.pop_front();
      queue.push(now_us, EventKind::TaskStart, nd, nt);
    } else {
      node.busy = false;
    }
    for (auto e : dags[d].idx.succs[t]) {
      Flow f;
      f.dag = d;
      f.edge = e;
      flows.push_back(std::move(f));
      queue.push(now_us, EventKind::TransferStart, flows.size() - 1);
    }
  }

  const std::optional<routing::Route>& route_for(std::size_t src, std::size_t dst) {
    const auto key = std::make_pair(src, dst);
    auto it = route_cache.find(key);
    if (it == route_cache.end()) {
      it = route_cache.emplace(key, routing::find_route(spec.routing, spec.network, src, dst)).first;
    }
    return it->second;
  }

  TransferHistory& history(std::size_t id) { return metrics.transfers[id]; }

  void on_transfer_start(std::size_t id) {
    auto& f = flows[id];
    const auto& dag = dag_spec(f.dag);
    const auto& edge = dag.edges[f.edge];
    const auto src_task = dags[f.dag].idx.edge_src[f.edge];
    const auto dst_task = dags[f.dag].idx.edge_dst[f.edge];
    const auto src = dags[f.dag].tasks[src_task].node;
    const auto dst = dags[f.dag].tasks[dst_task].node;
    f.total = edge.data_size;

    TransferHistory h;
    h.flow = static_cast<std::int64_t>(id);
    h.dag = dag.id;
    h.src_task = edge.src_task;
    h.dst_task = edge.dst_task;
    h.src_node = node_id(src);
    h.dst_node = node_id(dst);
    h.size_mb = edge.data_size;
    h.start = now();
    metrics.transfers.push_back(std::move(h));

    TraceEvent ev;
    ev.kind = "transfer_start";
    ev.dag = dag.id;
    ev.flow = static_cast<std::int64_t>(id);
    ev.detail.push_back({"src_task", edge.src_task});
    ev.detail.push_back({"dst_task", edge.dst_task});
    ev.detail.push_back({"size_mb", edge.data_size, 3});

    if (edge.data_size <= 0.0 || src == dst) {
      history(id).instant = true;
      history(id).route = {node_id(src)};
      ev.detail.push_back({"instant", true});
      emit(std::move(ev));
      f.completion = queue.push(now_us, EventKind::TransferComplete, id);
      return;
    }

    const auto& route = route_for(src, dst);
    if (!route) {
      ev.detail.push_back({"route", std::string("none")});
      emit(std::move(ev));
      return;  // never completes; surfaces as a deadlock
    }
    f.route = *route;
    f.active = true;
    for (auto v : f.route.nodes) history(id).route.push_back(node_id(v));
    history(id).latency = f.route.latency;
    ev.link = link_name(f.route.links.front());
    ev.detail.push_back({"route", history(id).route});

    bool set_changed = false;
    for (auto l : f.route.links) {
      if (link_flows[l]++ == 0) set_changed = true;
    }
    if (set_changed) rebuild_active_links();
    // The new flow's rate is known only after the cascade; emit its start after.
    recalc(f.route.links, set_changed, id, &ev);
  }

  void on_transfer_complete(std::size_t id) {
    auto& f = flows[id];
    TraceEvent ev;
    ev.kind = "transfer_complete";
    ev.dag = dag_spec(f.dag).id;
    ev.flow = static_cast<std::int64_t>(id);
    f.completion.reset();
    if (f.active) {
      freeze(f);
      f.active = false;
      bool set_changed = false;
      for (auto l : f.route.links) {
        if (--link_flows[l] == 0) set_changed = true;
      }
      if (set_changed) rebuild_active_links();
      ev.link = link_name(f.route.links.back());
      const double elapsed = now() - history(id).start;
      ev.detail.push_back({"size_mb", f.total, 3});
      ev.detail.push_back({"duration", elapsed, 6});
      ev.detail.push_back({"avg_rate", elapsed > 0 ? f.total / elapsed : 0.0, 3});
      history(id).end = now();
      emit(std::move(ev));
      recalc(f.route.links, set_changed, std::nullopt, nullptr);
    } else {
      history(id).end = now();
      emit(std::move(ev));
    }

    const auto dst_task = dags[f.dag].idx.edge_dst[f.edge];
    auto& consumer = dags[f.dag].tasks[dst_task];
    if (--consumer.inputs_left == 0) {
      queue.push(now_us, EventKind::TaskReady, f.dag, dst_task, dags[f.dag].ready_rank[dst_task]);
    }
  }

  void rebuild_active_links() {
    active_links.clear();
    for (std::size_t l = 0; l < link_flows.size(); ++l) {
      if (link_flows[l] > 0) active_links.push_back(l);
    }
  }

  // Banks progress at the current rate up to now (or until the data ran out).
  void freeze(Flow& f) {
    const double t = now();
    const double end = std::min(t, f.data_end);
    auto& h = history(static_cast<std::size_t>(&f - flows.data()));
    if (f.rated && f.rate > 0.0 && end > f.since) {
      h.phases.push_back({f.since, end, f.rate});
      f.transferred = std::min(f.total, f.transferred + f.rate * (end - f.since));
    }
    f.since = t;
  }

  void schedule_completion(std::size_t id) {
    auto& f = flows[id];
    if (f.completion) queue.cancel(*f.completion);
    f.completion.reset();
    if (!(f.rate > 0.0)) return;
    const double remaining = std::max(0.0, f.total - f.transferred);
    f.data_end = now() + remaining / f.rate;
    f.completion = queue.push(to_micros(f.data_end + f.route.latency), EventKind::TransferComplete, id);
  }

  void recalc(const std::vector<std::size_t>& changed, bool set_changed, std::optional<std::size_t> new_flow,
              TraceEvent* start_event) {
    std::vector<std::size_t> affected;
    if (new_flow) affected.push_back(*new_flow);
    const bool everyone = set_changed && interference->couples_links();
    for (std::size_t id = 0; id < flows.size(); ++id) {
      const auto& f = flows[id];
      if (!f.active || (new_flow && *new_flow == id)) continue;
      bool hit = everyone;
      for (std::size_t i = 0; !hit && i < f.route.links.size(); ++i) {
        hit = std::find(changed.begin(), changed.end(), f.route.links[i]) != changed.end();
      }
      if (hit) affected.push_back(id);
    }

    std::vector<std::optional<mac::FactorBreakdown>> cache(spec.network.link_count());
    std::vector<double> factors(spec.network.link_count(), 1.0);
    auto factor_of = [&](std::size_t l) -> const mac::FactorBreakdown& {
      if (!cache[l]) cache[l] = interference->factor(l, active_links);
      return *cache[l];
    };

    for (auto id : affected) {
      auto& f = flows[id];
      for (auto l : f.route.links) factors[l] = factor_of(l).f;
      const auto rr = routing::effective_rate(f.route, spec.network, link_flows, factors);
      const auto& fb = factor_of(rr.bottleneck_link);

      if (!f.rated) {
        f.rated = true;
        f.rate = rr.rate;
        f.since = now();
        f.data_end = now();
        schedule_completion(id);
        if (start_event) {
          start_event->detail.push_back({"rate", f.rate, 3});
          start_event->detail.push_back({"f", fb.f, 4});
          emit(std::move(*start_event));
          start_event = nullptr;
        }
        continue;
      }
      if (std::abs(rr.rate - f.rate) <= 1e-12 * std::max(1.0, f.rate)) continue;

      const double old = f.rate;
      freeze(f);
      const double remaining = std::max(0.0, f.total - f.transferred);
      const bool tail = f.data_end <= now() || remaining <= 1e-9;
      if (!tail) {
        f.rate = rr.rate;
        schedule_completion(id);
      }
      ++metrics.rate_changes;

      TraceEvent ev;
      ev.kind = "rate_change";
      ev.dag = dag_spec(f.dag).id;
      ev.flow = static_cast<std::int64_t>(id);
      ev.link = link_name(rr.bottleneck_link);
      ev.detail.push_back({"old_rate", old, 3});
      ev.detail.push_back({"new_rate", rr.rate, 3});
      ev.detail.push_back({"remaining_mb", remaining, 3});
      ev.detail.push_back({"f", fb.f, 4});
      ev.detail.push_back({"f_ht", fb.f_ht, 4});
      ev.detail.push_back({"eta", fb.eta, 4});
      ev.detail.push_back({"n", static_cast<std::int64_t>(fb.n)});
      emit(std::move(ev));
    }
    if (start_event) emit(std::move(*start_event));
  }

  void collect_metrics() {
    metrics.tasks.clear();
    metrics.dags.clear();
    metrics.makespan = 0.0;
    for (std::size_t d = 0; d < dags.size(); ++d) {
      DagResult dr{dag_spec(d).id, dag_spec(d).inject_at, -1.0};
      bool all_done = dags[d].completed == dags[d].tasks.size();
      for (std::size_t t = 0; t < dags[d].tasks.size(); ++t) {
        const auto& task = dags[d].tasks[t];
        TaskTimeline tl;
        tl.dag = dag_spec(d).id;
        tl.task = dag_spec(d).tasks[t].id;
        tl.node = dags[d].injected ? node_id(task.node) : std::string();
        tl.ready = task.ready_us >= 0 ? from_micros(task.ready_us) : -1.0;
        tl.start = task.start_us >= 0 ? from_micros(task.start_us) : -1.0;
        tl.finish = task.finish_us >= 0 ? from_micros(task.finish_us) : -1.0;
        tl.state = task.state;
        if (tl.finish > dr.finish) dr.finish = tl.finish;
        metrics.makespan = std::max(metrics.makespan, tl.finish);
        metrics.tasks.push_back(std::move(tl));
      }
      if (!all_done) dr.finish = -1.0;
      metrics.dags.push_back(dr);
    }
    metrics.stale_events = queue.stale_skipped();
  }

  RunMetrics run() {
    std::vector<std::size_t> order(spec.dags.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return spec.dags[a].inject_at < spec.dags[b].inject_at; });
    for (auto d : order) queue.push(to_micros(spec.dags[d].inject_at), EventKind::DagInject, d);

    Event ev;
    while (queue.pop(ev)) {
      if (ev.time_us < now_us) throw Error("event queue yielded an event in the past");
      now_us = ev.time_us;
      if (++metrics.events > spec.max_events) {
        collect_metrics();
        throw NonQuiescent(fmt::format("event cap of {} exceeded at t={:.6f}", spec.max_events, now()));
      }
      switch (ev.kind) {
        case EventKind::DagInject: on_dag_inject(ev.a); break;
        case EventKind::TaskComplete: on_task_complete(ev.a, ev.b); break;
        case EventKind::TransferComplete: on_transfer_complete(ev.a); break;
        case EventKind::TaskReady: on_task_ready(ev.a, ev.b); break;
        case EventKind::TaskStart: on_task_start(ev.a, ev.b); break;
        case EventKind::TransferStart: on_transfer_start(ev.a); break;
      }
    }
    collect_metrics();

    std::vector<std::string> stuck;
    for (std::size_t d = 0; d < dags.size(); ++d) {
      for (std::size_t t = 0; t < dags[d].tasks.size(); ++t) {
        if (dags[d].tasks[t].state != TaskState::Completed) {
          stuck.push_back(dag_spec(d).id + "/" + dag_spec(d).tasks[t].id);
        }
      }
    }
    if (!stuck.empty()) {
      for (std::size_t id = 0; id < flows.size(); ++id) {
        if (flows[id].active) freeze(flows[id]);
      }
      throw DeadlockError(std::move(stuck), std::move(metrics));
    }
    return std::move(metrics);
  }
};

Engine::Engine(SimulationSpec spec, TraceSink* sink) : impl_(std::make_unique<Impl>(std::move(spec), sink)) {}

Engine::~Engine() = default;

RunMetrics Engine::run() { return impl_->run(); }

RunMetrics simulate(SimulationSpec spec, TraceSink* sink) { return Engine(std::move(spec), sink).run(); }

}  // namespace ncsim::engine
