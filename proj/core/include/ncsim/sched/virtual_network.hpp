#pragma once

#include <string>
#include <vector>

#include "ncsim/model.hpp"
#include "ncsim/routing/routing.hpp"

namespace ncsim::sched {

inline constexpr double kUnreachableBandwidth = 0.001;  // MB/s

// Complete graph over the snapshot's nodes, in declaration order.
struct VirtualNetwork {
  std::vector<std::string> node_ids;
  std::vector<double> capacity;
  std::vector<double> bandwidth;  // row-major n*n, MB/s
  std::vector<double> latency;    // row-major n*n, seconds

  std::size_t size() const { return node_ids.size(); }
  double bw(std::size_t u, std::size_t v) const { return bandwidth[u * size() + v]; }
  double lat(std::size_t u, std::size_t v) const { return latency[u * size() + v]; }

  // Zero when co-located or when there is nothing to send.
  double comm_cost(std::size_t u, std::size_t v, double data_mb) const;
  double exec_time(double compute_cost, std::size_t v) const { return compute_cost / capacity[v]; }
  std::size_t index_of(const std::string& node_id) const;
};

VirtualNetwork build_virtual_network(const NetworkSnapshot& snapshot, routing::RoutingModel model);

}  // namespace ncsim::sched
