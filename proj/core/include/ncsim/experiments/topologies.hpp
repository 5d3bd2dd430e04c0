#pragma once

#include <cstdint>
#include <string>

#include "ncsim/io/scenario.hpp"

namespace ncsim::experiments {

inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr double kGridSpacing = 40.0;
inline constexpr double kMinCapacity = 80.0;
inline constexpr double kMaxCapacity = 300.0;

// rows x cols grid, RF links between 8-neighbours, capacities drawn from
// [80, 300) keyed on (seed, node index). No DAGs.
io::Scenario grid_scenario(std::size_t rows, std::size_t cols, std::uint64_t seed = kDefaultSeed,
                           double spacing = kGridSpacing);

struct RggStats {
  std::uint64_t seed_used = 0;
  std::size_t attempts = 0;
  std::size_t undirected_links = 0;
  double average_degree = 0.0;
};

inline constexpr std::size_t kMaxRggAttempts = 1000;

// Uniform placement in side x side, auto-link at max_distance. Regenerates
// with the next seed while the graph is disconnected; throws Error after
// kMaxRggAttempts seeds.
io::Scenario rgg_scenario(std::size_t nodes, double side, double max_distance, std::uint64_t seed,
                          RggStats* stats = nullptr);

// k parallel links tx_i -> rx_i of the given length, stacked `separation`
// apart. A manual DAG moves `data` MB over every link at the same instant.
io::Scenario parallel_links_scenario(std::size_t links, double separation, double length = 30.0,
                                     double data = 10.0);

// Two nodes `distance` apart with one direct link and a T0 -> T1 transfer.
io::Scenario two_node_scenario(double distance, double data = 10.0);

}  // namespace ncsim::experiments
