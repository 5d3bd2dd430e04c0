#include "ncsim/routing/routing.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>
#include <stdexcept>

namespace ncsim::routing {

RoutingModel parse_routing(const std::string& name) {
  if (name == "direct") return RoutingModel::Direct;
  if (name == "widest_path") return RoutingModel::WidestPath;
  if (name == "shortest_path") return RoutingModel::ShortestPath;
  throw std::invalid_argument("unknown routing model '" + name + "'");
}

const char* to_string(RoutingModel model) {
  switch (model) {
    case RoutingModel::Direct: return "direct";
    case RoutingModel::WidestPath: return "widest_path";
    case RoutingModel::ShortestPath: return "shortest_path";
  }
  return "?";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr auto kUnset = std::numeric_limits<std::size_t>::max();

bool nearly_equal(double a, double b) {
  if (a == b) return true;
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

Route assemble(const Network& network, std::size_t src, const std::vector<std::size_t>& links) {
  Route r;
  r.links = links;
  r.nodes.push_back(src);
  r.bottleneck = kInf;
  for (auto l : links) {
    r.nodes.push_back(network.link_dst(l));
    r.latency += network.links()[l].latency;
    r.bottleneck = std::min(r.bottleneck, network.links()[l].bandwidth);
  }
  if (links.empty()) r.bottleneck = kInf;
  return r;
}

// Walk from src towards dst, at each step taking an allowed link whose head
// is one hop closer, preferring the smallest node id.
template <typename Allowed>
std::vector<std::size_t> greedy_walk(const Network& network, std::size_t src, std::size_t dst,
                                     const std::vector<std::size_t>& hops, Allowed allowed) {
  std::vector<std::size_t> links;
  std::size_t cur = src;
  while (cur != dst) {
    std::optional<std::size_t> pick;
    for (auto l : network.out_links(cur)) {
      const auto v = network.link_dst(l);
      if (!allowed(l, cur) || hops[v] + 1 != hops[cur]) continue;
      if (!pick || network.nodes()[v].id < network.nodes()[network.link_dst(*pick)].id) pick = l;
    }
    links.push_back(*pick);
    cur = network.link_dst(*pick);
  }
  return links;
}

std::optional<Route> widest(const Network& network, std::size_t src, std::size_t dst) {
  const std::size_t n = network.node_count();
  std::vector<double> width(n, 0.0);
  std::vector<bool> done(n, false);
  std::priority_queue<std::pair<double, std::size_t>> heap;
  width[src] = kInf;
  heap.push({kInf, src});
  while (!heap.empty()) {
    const auto [w, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = true;
    for (auto l : network.out_links(u)) {
      const double bw = network.links()[l].bandwidth;
      if (!(bw > 0.0)) continue;
      const auto v = network.link_dst(l);
      const double cand = std::min(w, bw);
      if (cand > width[v]) {
        width[v] = cand;
        heap.push({cand, v});
      }
    }
  }
  if (!(width[dst] > 0.0)) return std::nullopt;
  const double best = width[dst];
  auto allowed = [&](std::size_t l, std::size_t) { return network.links()[l].bandwidth >= best; };

  // Hop distance to dst inside the subgraph of links at least as wide as best.
  std::vector<std::size_t> hops(n, kUnset);
  hops[dst] = 0;
  std::deque<std::size_t> queue{dst};
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    for (auto l : network.in_links(v)) {
      const auto u = network.link_src(l);
      if (hops[u] != kUnset || !allowed(l, u)) continue;
      hops[u] = hops[v] + 1;
      queue.push_back(u);
    }
  }
  return assemble(network, src, greedy_walk(network, src, dst, hops, allowed));
}

struct ShortestTree {
  std::vector<double> lat;
  std::vector<std::size_t> hops;
};

// Reverse Dijkstra on (latency, hops) towards dst.
ShortestTree shortest_tree(const Network& network, std::size_t dst) {
  const std::size_t n = network.node_count();
  ShortestTree t{std::vector<double>(n, kInf), std::vector<std::size_t>(n, kUnset)};
  std::vector<bool> done(n, false);
  auto better = [](double la, std::size_t ha, double lb, std::size_t hb) {
    if (!nearly_equal(la, lb)) return la < lb;
    return ha < hb;
  };
  t.lat[dst] = 0.0;
  t.hops[dst] = 0;
  for (;;) {
    std::optional<std::size_t> u;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || t.hops[i] == kUnset) continue;
      if (!u || better(t.lat[i], t.hops[i], t.lat[*u], t.hops[*u])) u = i;
    }
    if (!u) break;
    done[*u] = true;
    for (auto l : network.in_links(*u)) {
      if (!(network.links()[l].bandwidth > 0.0)) continue;
      const auto v = network.link_src(l);
      if (done[v]) continue;
      const double cand = t.lat[*u] + network.links()[l].latency;
      if (t.hops[v] == kUnset || better(cand, t.hops[*u] + 1, t.lat[v], t.hops[v])) {
        t.lat[v] = cand;
        t.hops[v] = t.hops[*u] + 1;
      }
    }
  }
  return t;
}

std::optional<Route> shortest(const Network& network, std::size_t src, std::size_t dst, const ShortestTree& t) {
  if (t.hops[src] == kUnset) return std::nullopt;
  auto allowed = [&](std::size_t l, std::size_t cur) {
    if (!(network.links()[l].bandwidth > 0.0)) return false;
    const auto v = network.link_dst(l);
    return t.hops[v] != kUnset && nearly_equal(network.links()[l].latency + t.lat[v], t.lat[cur]);
  };
  return assemble(network, src, greedy_walk(network, src, dst, t.hops, allowed));
}

}  // namespace

std::optional<Route> find_route(RoutingModel model, const Network& network, std::size_t src, std::size_t dst) {
  if (src == dst) return assemble(network, src, {});
  switch (model) {
    case RoutingModel::Direct: {
      const auto l = network.link_index(src, dst);
      if (!l) return std::nullopt;
      return assemble(network, src, {*l});
    }
    case RoutingModel::WidestPath: return widest(network, src, dst);
    case RoutingModel::ShortestPath: return shortest(network, src, dst, shortest_tree(network, dst));
  }
  return std::nullopt;
}

std::vector<std::optional<Route>> routes_to(RoutingModel model, const Network& network, std::size_t dst) {
  std::vector<std::optional<Route>> out(network.node_count());
  if (model == RoutingModel::ShortestPath) {
    const auto tree = shortest_tree(network, dst);
    for (std::size_t s = 0; s < out.size(); ++s) {
      out[s] = s == dst ? assemble(network, s, {}) : shortest(network, s, dst, tree);
    }
    return out;
  }
  for (std::size_t s = 0; s < out.size(); ++s) out[s] = find_route(model, network, s, dst);
  return out;
}

Route require_route(RoutingModel model, const Network& network, std::size_t src, std::size_t dst) {
  auto r = find_route(model, network, src, dst);
  if (!r) {
    throw NoRoute("no " + std::string(to_string(model)) + " route from " + network.nodes()[src].id + " to " +
                  network.nodes()[dst].id);
  }
  return *std::move(r);
}

RouteRate effective_rate(const Route& route, const Network& network, const std::vector<std::size_t>& flow_counts,
                         const std::vector<double>& factors) {
  RouteRate out{kInf, 0};
  for (auto l : route.links) {
    const double f = factors.empty() ? 1.0 : factors[l];
    const double n = static_cast<double>(std::max<std::size_t>(1, flow_counts[l]));
    const double r = network.links()[l].bandwidth * f / n;
    if (r < out.rate) out = {r, l};
  }
  if (route.links.empty()) out.rate = kInf;
  return out;
}

}  // namespace ncsim::routing
