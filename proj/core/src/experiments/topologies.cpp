#include "ncsim/experiments/topologies.hpp"

#include <deque>

#include <fmt/format.h>

#include "ncsim/error.hpp"

namespace ncsim::experiments {

io::Scenario grid_scenario(std::size_t rows, std::size_t cols, std::uint64_t seed, double spacing) {
  io::Scenario s;
  s.seed = seed;
  s.capacity_range = std::make_pair(kMinCapacity, kMaxCapacity);
  s.rf.enabled = true;
  auto id = [](std::size_t r, std::size_t c) { return fmt::format("n{}{}", r, c); };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      s.nodes.push_back({id(r, c), std::nullopt, Position{c * spacing, r * spacing}});
    }
  }
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) s.links.push_back({id(r, c), id(r, c + 1), std::nullopt, std::nullopt, false});
      if (r + 1 < rows) s.links.push_back({id(r, c), id(r + 1, c), std::nullopt, std::nullopt, false});
      if (r + 1 < rows && c + 1 < cols) s.links.push_back({id(r, c), id(r + 1, c + 1), std::nullopt, std::nullopt, false});
      if (r + 1 < rows && c > 0) s.links.push_back({id(r, c), id(r + 1, c - 1), std::nullopt, std::nullopt, false});
    }
  }
  return s;
}

io::Scenario rgg_scenario(std::size_t nodes, double side, double max_distance, std::uint64_t seed, RggStats* stats) {
  for (std::size_t attempt = 1;; ++attempt, ++seed) {
    if (attempt > kMaxRggAttempts) {
      throw Error(fmt::format("no connected placement after {} seeds", kMaxRggAttempts));
    }
    std::vector<Position> pos;
    for (std::size_t i = 0; i < nodes; ++i) {
      pos.push_back({io::keyed_uniform(seed, 2 * i + 1000003, 0.0, side),
                     io::keyed_uniform(seed, 2 * i + 1000004, 0.0, side)});
    }
    std::vector<std::vector<std::size_t>> adj(nodes);
    std::size_t links = 0;
    for (std::size_t i = 0; i < nodes; ++i) {
      for (std::size_t j = i + 1; j < nodes; ++j) {
        if (distance(pos[i], pos[j]) <= max_distance) {
          adj[i].push_back(j);
          adj[j].push_back(i);
          ++links;
        }
      }
    }
    std::vector<bool> seen(nodes, false);
    std::deque<std::size_t> queue{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop_front();
      for (auto v : adj[u]) {
        if (!seen[v]) {
          seen[v] = true;
          ++reached;
          queue.push_back(v);
        }
      }
    }
    if (reached != nodes) continue;

    io::Scenario s;
    s.seed = seed;
    s.capacity_range = std::make_pair(kMinCapacity, kMaxCapacity);
    s.rf.enabled = true;
    s.auto_link = io::AutoLink{max_distance, std::nullopt, std::nullopt};
    for (std::size_t i = 0; i < nodes; ++i) s.nodes.push_back({fmt::format("v{:03}", i), std::nullopt, pos[i]});
    if (stats) {
      stats->seed_used = seed;
      stats->attempts = attempt;
      stats->undirected_links = links;
      stats->average_degree = 2.0 * static_cast<double>(links) / static_cast<double>(nodes);
    }
    return s;
  }
}

io::Scenario parallel_links_scenario(std::size_t links, double separation, double length, double data) {
  io::Scenario s;
  s.rf.enabled = true;
  s.interference = "csma_bianchi";
  s.routing = "direct";
  s.scheduler = "manual";
  DagSpec dag;
  dag.id = "flows";
  for (std::size_t i = 0; i < links; ++i) {
    const double y = static_cast<double>(i) * separation;
    const auto tx = fmt::format("tx{}", i);
    const auto rx = fmt::format("rx{}", i);
    s.nodes.push_back({tx, 1000.0, Position{0.0, y}});
    s.nodes.push_back({rx, 1000.0, Position{length, y}});
    s.links.push_back({tx, rx, std::nullopt, std::nullopt, true});
    dag.tasks.push_back({fmt::format("S{}", i), 1.0, tx});
    dag.tasks.push_back({fmt::format("D{}", i), 1.0, rx});
    dag.edges.push_back({fmt::format("S{}", i), fmt::format("D{}", i), data});
  }
  s.dags.push_back(std::move(dag));
  return s;
}

io::Scenario two_node_scenario(double d, double data) {
  io::Scenario s;
  s.rf.enabled = true;
  s.routing = "direct";
  s.scheduler = "manual";
  s.nodes.push_back({"a", 1000.0, Position{0.0, 0.0}});
  s.nodes.push_back({"b", 1000.0, Position{d, 0.0}});
  s.links.push_back({"a", "b", std::nullopt, std::nullopt, false});
  DagSpec dag;
  dag.id = "pair";
  dag.tasks.push_back({"T0", 1.0, std::string("a")});
  dag.tasks.push_back({"T1", 1.0, std::string("b")});
  dag.edges.push_back({"T0", "T1", data});
  s.dags.push_back(std::move(dag));
  return s;
}

}  // namespace ncsim::experiments
