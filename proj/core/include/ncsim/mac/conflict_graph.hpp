#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ncsim/model.hpp"

namespace ncsim::mac {

// Undirected conflict relation over the directed links of a network.
class ConflictGraph {
 public:
  ConflictGraph() = default;
  explicit ConflictGraph(std::size_t link_count);

  std::size_t size() const { return n_; }
  std::size_t edge_count() const { return edges_; }

  void add_conflict(std::size_t a, std::size_t b);
  bool conflicts(std::size_t a, std::size_t b) const {
    return (bits_[a * words_ + b / 64] >> (b % 64)) & 1U;
  }
  // Sorted ascending.
  const std::vector<std::size_t>& neighbors(std::size_t link) const { return adj_[link]; }

  // Diagnostic only. Bron-Kerbosch with pivoting; above 50 links falls back
  // to a greedy cover so the call stays cheap on large graphs.
  std::vector<std::vector<std::size_t>> maximal_cliques() const;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::size_t edges_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<std::vector<std::size_t>> adj_;
};

// Without RTS/CTS two links conflict when either transmitter is within range
// of the other link's transmitter or receiver. With RTS/CTS any endpoint pair
// within range is enough. Throws MissingPosition.
ConflictGraph build_conflict_graph(const Network& network, double cs_range_m, bool rts_cts);

}  // namespace ncsim::mac
