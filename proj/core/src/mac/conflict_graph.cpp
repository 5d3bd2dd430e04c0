#include "ncsim/mac/conflict_graph.hpp"

#include <algorithm>

#include "ncsim/error.hpp"

namespace ncsim::mac {

ConflictGraph::ConflictGraph(std::size_t link_count)
    : n_(link_count), words_((link_count + 63) / 64), bits_(link_count * words_, 0), adj_(link_count) {}

void ConflictGraph::add_conflict(std::size_t a, std::size_t b) {
  if (a == b || conflicts(a, b)) return;
  bits_[a * words_ + b / 64] |= std::uint64_t{1} << (b % 64);
  bits_[b * words_ + a / 64] |= std::uint64_t{1} << (a % 64);
  adj_[a].insert(std::upper_bound(adj_[a].begin(), adj_[a].end(), b), b);
  adj_[b].insert(std::upper_bound(adj_[b].begin(), adj_[b].end(), a), a);
  ++edges_;
}

namespace {

using Set = std::vector<std::size_t>;

Set intersect(const Set& a, const Set& b) {
  Set out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void bron_kerbosch(const ConflictGraph& g, Set r, Set p, Set x, std::vector<Set>& out) {
  if (p.empty() && x.empty()) {
    out.push_back(std::move(r));
    return;
  }
  std::size_t pivot = p.empty() ? x.front() : p.front();
  std::size_t best = 0;
  for (const Set* s : {&p, &x}) {
    for (auto u : *s) {
      const auto k = intersect(p, g.neighbors(u)).size();
      if (k > best) {
        best = k;
        pivot = u;
      }
    }
  }
  Set candidates;
  std::set_difference(p.begin(), p.end(), g.neighbors(pivot).begin(), g.neighbors(pivot).end(),
                      std::back_inserter(candidates));
  for (auto v : candidates) {
    Set r2 = r;
    r2.insert(std::upper_bound(r2.begin(), r2.end(), v), v);
    bron_kerbosch(g, std::move(r2), intersect(p, g.neighbors(v)), intersect(x, g.neighbors(v)), out);
    p.erase(std::find(p.begin(), p.end(), v));
    x.insert(std::upper_bound(x.begin(), x.end(), v), v);
  }
}

}  // namespace

std::vector<std::vector<std::size_t>> ConflictGraph::maximal_cliques() const {
  std::vector<Set> out;
  if (n_ == 0) return out;
  if (n_ <= 50) {
    Set all(n_);
    for (std::size_t i = 0; i < n_; ++i) all[i] = i;
    bron_kerbosch(*this, {}, all, {}, out);
    std::sort(out.begin(), out.end());
    return out;
  }
  std::vector<bool> covered(n_, false);
  for (std::size_t v = 0; v < n_; ++v) {
    if (covered[v]) continue;
    Set clique{v};
    for (auto u : adj_[v]) {
      if (std::all_of(clique.begin(), clique.end(), [&](std::size_t c) { return conflicts(c, u); })) {
        clique.push_back(u);
      }
    }
    std::sort(clique.begin(), clique.end());
    for (auto c : clique) covered[c] = true;
    out.push_back(std::move(clique));
  }
  return out;
}

ConflictGraph build_conflict_graph(const Network& network, double cs_range_m, bool rts_cts) {
  const std::size_t n = network.link_count();
  std::vector<Position> tx(n), rx(n);
  for (std::size_t l = 0; l < n; ++l) {
    const auto& a = network.nodes()[network.link_src(l)];
    const auto& b = network.nodes()[network.link_dst(l)];
    if (!a.position || !b.position) {
      throw MissingPosition("conflict graph needs positions for nodes " + a.id + " and " + b.id);
    }
    tx[l] = *a.position;
    rx[l] = *b.position;
  }
  auto near = [cs_range_m](const Position& p, const Position& q) { return distance(p, q) <= cs_range_m; };

  ConflictGraph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      bool hit = near(tx[i], tx[j]) || near(tx[i], rx[j]) || near(tx[j], rx[i]);
      if (!hit && rts_cts) hit = near(rx[i], rx[j]);
      if (hit) g.add_conflict(i, j);
    }
  }
  return g;
}

}  // namespace ncsim::mac
