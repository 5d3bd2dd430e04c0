#pragma once

// Reference implementations shared by the unit and acceptance tests. None of
// them reuse the library's search code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ncsim/engine/engine.hpp"
#include "ncsim/io/jsonl_trace.hpp"
#include "ncsim/io/scenario.hpp"
#include "ncsim/model.hpp"
#include "ncsim/routing/routing.hpp"

namespace ncsim::oracle {

struct PathCandidate {
  std::vector<std::size_t> nodes;
  double bottleneck = 0.0;
  double latency = 0.0;
};

inline bool near(double a, double b) {
  return a == b || std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

// Every simple path over links with positive bandwidth.
inline void enumerate_paths(const Network& net, std::size_t cur, std::size_t dst, std::vector<std::size_t>& stack,
                            std::vector<bool>& on_path, double width, double lat,
                            std::vector<PathCandidate>& out) {
  if (cur == dst) {
    out.push_back({stack, width, lat});
    return;
  }
  for (std::size_t l = 0; l < net.link_count(); ++l) {
    if (net.link_src(l) != cur) continue;
    const auto& spec = net.links()[l];
    const auto v = net.link_dst(l);
    if (!(spec.bandwidth > 0.0) || on_path[v]) continue;
    on_path[v] = true;
    stack.push_back(v);
    enumerate_paths(net, v, dst, stack, on_path, std::min(width, spec.bandwidth), lat + spec.latency, out);
    stack.pop_back();
    on_path[v] = false;
  }
}

inline std::vector<std::string> id_sequence(const Network& net, const std::vector<std::size_t>& nodes) {
  std::vector<std::string> ids;
  for (auto n : nodes) ids.push_back(net.nodes()[n].id);
  return ids;
}

inline std::optional<PathCandidate> brute_force_route(routing::RoutingModel model, const Network& net,
                                                      std::size_t src, std::size_t dst) {
  std::vector<PathCandidate> all;
  std::vector<std::size_t> stack{src};
  std::vector<bool> on_path(net.node_count(), false);
  on_path[src] = true;
  enumerate_paths(net, src, dst, stack, on_path, INFINITY, 0.0, all);
  if (model == routing::RoutingModel::Direct) {
    // Any explicit link counts, even one with zero bandwidth.
    for (std::size_t l = 0; l < net.link_count(); ++l) {
      if (net.link_src(l) == src && net.link_dst(l) == dst) {
        const auto& spec = net.links()[l];
        return PathCandidate{{src, dst}, spec.bandwidth, spec.latency};
      }
    }
    return std::nullopt;
  }
  std::optional<PathCandidate> best;
  for (const auto& p : all) {
    if (!best) {
      best = p;
      continue;
    }
    if (model == routing::RoutingModel::WidestPath) {
      if (p.bottleneck != best->bottleneck) {
        if (p.bottleneck > best->bottleneck) best = p;
        continue;
      }
    } else if (!near(p.latency, best->latency)) {
      if (p.latency < best->latency) best = p;
      continue;
    }
    if (p.nodes.size() != best->nodes.size()) {
      if (p.nodes.size() < best->nodes.size()) best = p;
      continue;
    }
    if (id_sequence(net, p.nodes) < id_sequence(net, best->nodes)) best = p;
  }
  return best;
}

// Random digraph with ids n0..n{nodes-1}; bandwidths and latencies come from
// small sets so that ties are common.
inline Network random_digraph(std::uint64_t seed, std::size_t max_nodes = 5, std::size_t max_links = 8) {
  std::mt19937_64 rng(seed);
  const std::size_t n = 2 + rng() % (max_nodes - 1);
  std::vector<NodeSpec> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back({"n" + std::to_string(i), 1.0, std::nullopt});
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b) pairs.push_back({a, b});
    }
  }
  std::shuffle(pairs.begin(), pairs.end(), rng);
  const std::size_t m = std::min(pairs.size(), rng() % (max_links + 1));
  static const double bws[] = {0.0, 1.075, 4.3, 4.3, 8.6, 17.925};
  static const double lats[] = {0.0, 0.001, 0.001, 0.002, 0.003};
  std::vector<LinkSpec> links;
  for (std::size_t i = 0; i < m; ++i) {
    links.push_back({nodes[pairs[i].first].id, nodes[pairs[i].second].id, bws[rng() % 6], lats[rng() % 5]});
  }
  return Network(std::move(nodes), std::move(links));
}

// Makespan of `dag` with every task pinned as in `plan`, run through the engine.
inline double engine_makespan(DagSpec dag, const Network& net, const PlacementPlan& plan,
                              routing::RoutingModel routing = routing::RoutingModel::WidestPath) {
  for (auto& t : dag.tasks) t.pinned_to = plan.node_for(t.id);
  engine::SimulationSpec spec;
  spec.network = net;
  spec.dags = {std::move(dag)};
  spec.routing = routing;
  spec.scheduler = "manual";
  return engine::simulate(std::move(spec)).makespan;
}

// All |nodes|^|tasks| placements.
inline std::vector<PlacementPlan> all_placements(const DagSpec& dag, const Network& net) {
  std::vector<PlacementPlan> out;
  const std::size_t k = net.node_count();
  std::size_t total = 1;
  for (std::size_t i = 0; i < dag.tasks.size(); ++i) total *= k;
  for (std::size_t code = 0; code < total; ++code) {
    PlacementPlan p;
    std::size_t c = code;
    for (const auto& t : dag.tasks) {
      p.assignment[t.id] = net.nodes()[c % k].id;
      c /= k;
    }
    out.push_back(std::move(p));
  }
  return out;
}

struct Exhaustive {
  double best = INFINITY;
  PlacementPlan argmin;
};

inline Exhaustive exhaustive_optimum(const DagSpec& dag, const Network& net) {
  Exhaustive ex;
  for (const auto& p : all_placements(dag, net)) {
    const double m = engine_makespan(dag, net, p);
    if (m < ex.best) ex = {m, p};
  }
  return ex;
}

// Random RF scenario: jittered grid so auto-link keeps it connected, random
// DAG, random models.
inline io::Scenario random_scenario(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  io::Scenario s;
  s.seed = seed;
  s.rf.enabled = true;
  s.auto_link = io::AutoLink{60.0, std::nullopt, std::nullopt};
  const std::size_t cols = 2 + rng() % 3;
  const std::size_t rows = 1 + rng() % 3;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      io::NodeEntry n;
      n.id = "n" + std::to_string(r) + std::to_string(c);
      n.capacity = 50.0 + 250.0 * u(rng);
      n.position = Position{c * 35.0 + 8.0 * u(rng), r * 35.0 + 8.0 * u(rng)};
      s.nodes.push_back(n);
    }
  }
  const std::size_t tasks = 3 + rng() % 8;
  DagSpec dag;
  dag.id = "g" + std::to_string(seed);
  for (std::size_t i = 0; i < tasks; ++i) dag.tasks.push_back({"T" + std::to_string(i), 100.0 + 900.0 * u(rng), {}});
  for (std::size_t i = 0; i < tasks; ++i) {
    for (std::size_t j = i + 1; j < tasks; ++j) {
      if (u(rng) < 0.35) dag.edges.push_back({dag.tasks[i].id, dag.tasks[j].id, std::floor(20.0 * u(rng))});
    }
  }
  s.dags.push_back(dag);
  if (u(rng) < 0.5) {
    auto second = dag;
    second.id += "b";
    second.inject_at = std::round(u(rng) * 10.0) / 4.0;
    s.dags.push_back(second);
  }
  static const char* schedulers[] = {"heft", "cpop", "round_robin"};
  static const char* routings[] = {"widest_path", "shortest_path"};
  s.scheduler = schedulers[rng() % 3];
  s.routing = routings[rng() % 2];
  s.interference = (rng() % 2) ? "csma_bianchi" : "none";
  return s;
}

struct TracedRun {
  std::string trace;
  engine::RunMetrics metrics;
};

inline TracedRun run_traced(const io::Scenario& scenario) {
  std::ostringstream out;
  io::JsonlTraceSink sink(out);
  sink.write_meta(scenario);
  auto metrics = engine::simulate(io::build_simulation(scenario), &sink);
  return {out.str(), std::move(metrics)};
}

}  // namespace ncsim::oracle
