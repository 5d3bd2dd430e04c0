#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ncsim/error.hpp"
#include "ncsim/model.hpp"

namespace ncsim::routing {

enum class RoutingModel { Direct, WidestPath, ShortestPath };

RoutingModel parse_routing(const std::string& name);
const char* to_string(RoutingModel model);

class NoRoute : public Error {
 public:
  using Error::Error;
};

struct Route {
  std::vector<std::size_t> links;  // link indices, src to dst
  std::vector<std::size_t> nodes;  // node indices, links.size() + 1 entries
  double latency = 0.0;            // seconds, summed over links
  double bottleneck = 0.0;         // min static bandwidth, MB/s

  bool empty() const { return links.empty(); }
};

// Widest: maximize bottleneck bandwidth. Shortest: minimize summed latency.
// Both break ties by fewer hops, then by the node-id sequence compared
// lexicographically, and ignore zero-bandwidth links. Direct returns the
// single src->dst link if one exists.
std::optional<Route> find_route(RoutingModel model, const Network& network, std::size_t src, std::size_t dst);

// Routes from every node to dst; same result as calling find_route per source.
std::vector<std::optional<Route>> routes_to(RoutingModel model, const Network& network, std::size_t dst);

// Throws NoRoute instead of returning nullopt.
Route require_route(RoutingModel model, const Network& network, std::size_t src, std::size_t dst);

struct RouteRate {
  double rate = 0.0;  // MB/s
  std::size_t bottleneck_link = 0;
};

// Per link: bandwidth * factor / flows; the route gets the minimum.
// `flow_counts[l]` includes this flow. Empty `factors` means 1 everywhere.
RouteRate effective_rate(const Route& route, const Network& network, const std::vector<std::size_t>& flow_counts,
                         const std::vector<double>& factors = {});

}  // namespace ncsim::routing
