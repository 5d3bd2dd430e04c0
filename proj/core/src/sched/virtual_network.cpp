#include "ncsim/sched/virtual_network.hpp"

#include <stdexcept>

namespace ncsim::sched {

double VirtualNetwork::comm_cost(std::size_t u, std::size_t v, double data_mb) const {
  if (u == v || data_mb <= 0.0) return 0.0;
  return data_mb / bw(u, v) + lat(u, v);
}

std::size_t VirtualNetwork::index_of(const std::string& node_id) const {
  for (std::size_t i = 0; i < node_ids.size(); ++i) {
    if (node_ids[i] == node_id) return i;
  }
  throw std::out_of_range("virtual network has no node " + node_id);
}

VirtualNetwork build_virtual_network(const NetworkSnapshot& snapshot, routing::RoutingModel model) {
  const Network network = snapshot.to_network();
  const std::size_t n = network.node_count();
  VirtualNetwork vn;
  vn.bandwidth.assign(n * n, 0.0);
  vn.latency.assign(n * n, 0.0);
  for (const auto& node : network.nodes()) {
    vn.node_ids.push_back(node.id);
    vn.capacity.push_back(node.capacity);
  }
  for (std::size_t v = 0; v < n; ++v) {
    const auto routes = routing::routes_to(model, network, v);
    for (std::size_t u = 0; u < n; ++u) {
      if (u == v) continue;
      const auto& r = routes[u];
      if (r && r->bottleneck > 0.0) {
        vn.bandwidth[u * n + v] = r->bottleneck;
        vn.latency[u * n + v] = r->latency;
      } else {
        vn.bandwidth[u * n + v] = kUnreachableBandwidth;
      }
    }
  }
  return vn;
}

}  // namespace ncsim::sched
