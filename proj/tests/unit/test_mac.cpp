#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "ncsim/error.hpp"
#include "ncsim/mac/bianchi.hpp"
#include "ncsim/mac/conflict_graph.hpp"
#include "ncsim/mac/interference.hpp"
#include "ncsim/rf/phy.hpp"

namespace {

using namespace ncsim;

// k parallel 30 m links stacked `sep` apart, tx at x=0.
Network parallel(std::size_t k, double sep, double length = 30.0) {
  std::vector<NodeSpec> nodes;
  std::vector<LinkSpec> links;
  const auto& t = rf::McsTable::default_11ax();
  const double bw = t.rate_for(rf::snr_at_distance({}, length));
  for (std::size_t i = 0; i < k; ++i) {
    nodes.push_back({"tx" + std::to_string(i), 100, Position{0, i * sep}});
    nodes.push_back({"rx" + std::to_string(i), 100, Position{length, i * sep}});
    links.push_back({"tx" + std::to_string(i), "rx" + std::to_string(i), bw, 0});
  }
  return Network(std::move(nodes), std::move(links));
}

std::vector<std::size_t> all_links(std::size_t k) {
  std::vector<std::size_t> v(k);
  for (std::size_t i = 0; i < k; ++i) v[i] = i;
  return v;
}

mac::BianchiParams fhss(int w, int m) {
  auto p = mac::bianchi_profile("bianchi-fhss-1997");
  p.w_min = w;
  p.max_backoff_stage = m;
  return p;
}

TEST(Bianchi, SingleStationIsCollisionFree) {
  const auto fp = mac::solve_bianchi(mac::BianchiParams{}, 1);
  EXPECT_EQ(fp.p, 0.0);
  EXPECT_DOUBLE_EQ(fp.tau, 2.0 / 17.0);
}

TEST(Bianchi, FhssSaturationThroughput) {
  const auto p = mac::bianchi_profile("bianchi-fhss-1997");
  EXPECT_NEAR(mac::saturation_throughput(p, 2).s, 0.847311, 1e-6);
  EXPECT_NEAR(mac::saturation_throughput(p, 3).s, 0.836828, 1e-6);
}

TEST(Bianchi, BisectionConverges) {
  for (int n = 2; n <= 64; ++n) {
    const auto fp = mac::solve_bianchi(mac::BianchiParams{}, n);
    EXPECT_LE(fp.residual, 1e-10) << n;
    EXPECT_LE(fp.iterations, 40) << n;
    EXPECT_NEAR(fp.p, 1.0 - std::pow(1.0 - fp.tau, n - 1), 1e-10);
  }
}

TEST(Bianchi, TauSeriesMatchesClosedForm) {
  const int w = 32, m = 5;
  for (double p : {0.05, 0.2, 0.3, 0.45, 0.7, 0.9}) {
    const double closed = 2 * (1 - 2 * p) / ((1 - 2 * p) * (w + 1) + p * w * (1 - std::pow(2 * p, m)));
    EXPECT_NEAR(mac::tau_of_p(p, w, m), closed, 1e-14) << p;
  }
  EXPECT_GT(mac::tau_of_p(0.5, w, m), 0.0);
}

TEST(Bianchi, HugePayloadSaturatesSingleStation) {
  auto p = mac::bianchi_profile("bianchi-fhss-1997");
  p.payload_bits = 1e12;
  EXPECT_NEAR(mac::saturation_throughput(p, 1).s, 1.0, 1e-6);
}

TEST(Bianchi, LargeWindowCurveIsNotMonotonic) {
  const auto p = fhss(128, 3);
  std::vector<double> s;
  for (int n = 5; n <= 10; ++n) s.push_back(mac::saturation_throughput(p, n).s);
  EXPECT_FALSE(std::is_sorted(s.begin(), s.end()));
  EXPECT_FALSE(std::is_sorted(s.rbegin(), s.rend()));
  EXPECT_NEAR(s[0], 0.82502, 1e-5);
  EXPECT_NEAR(s[2], 0.82968, 1e-5);
}

TEST(Bianchi, SmallWindowCurveDecreases) {
  const auto p = fhss(32, 5);
  double prev = mac::saturation_throughput(p, 5).s;
  for (int n = 6; n <= 50; ++n) {
    const double s = mac::saturation_throughput(p, n).s;
    EXPECT_LT(s, prev) << n;
    prev = s;
  }
}

TEST(Bianchi, DefaultEfficiency) {
  const double expected[] = {0.88106, 0.8808, 0.85868, 0.8369, 0.81811, 0.80214, 0.78844, 0.77651};
  mac::EfficiencyTable table;
  for (int n = 1; n <= 8; ++n) EXPECT_NEAR(table.eta(n), expected[n - 1], 1e-5) << n;
  EXPECT_DOUBLE_EQ(table.contention_factor(1), 1.0);
  EXPECT_NEAR(table.contention_factor(2), 0.4404, 1e-4);
}

TEST(Bianchi, EfficiencyNonIncreasing) {
  mac::EfficiencyTable table;
  for (int n = 2; n < 32; ++n) EXPECT_GE(table.eta(n), table.eta(n + 1)) << n;
}

TEST(Bianchi, RejectsBadInput) {
  EXPECT_THROW(mac::solve_bianchi({}, 0), std::invalid_argument);
  EXPECT_THROW(mac::bianchi_profile("nope"), std::invalid_argument);
  mac::BianchiParams p;
  p.w_min = 0;
  EXPECT_THROW(mac::check(p), std::invalid_argument);
}

TEST(ConflictGraph, CloseParallelLinksConflict) {
  const auto net = parallel(2, 5);
  const auto g = mac::build_conflict_graph(net, rf::carrier_sense_range({}), false);
  EXPECT_TRUE(g.conflicts(0, 1));
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(ConflictGraph, FarParallelLinksDoNot) {
  const auto g = mac::build_conflict_graph(parallel(2, 200), rf::carrier_sense_range({}), false);
  EXPECT_FALSE(g.conflicts(0, 1));
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(ConflictGraph, SingleLinkIsEmpty) {
  const auto g = mac::build_conflict_graph(parallel(1, 0), 71.2, false);
  EXPECT_EQ(g.size(), 1u);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(ConflictGraph, BoundaryCounts) {
  // tx-tx distance equals the range exactly.
  const double cs = rf::carrier_sense_range({});
  EXPECT_TRUE(mac::build_conflict_graph(parallel(2, cs), cs, false).conflicts(0, 1));
  EXPECT_FALSE(mac::build_conflict_graph(parallel(2, cs + 1e-6), cs, false).conflicts(0, 1));
}

TEST(ConflictGraph, RtsCtsAddsReceiverPairs) {
  // Receivers 20 m apart, transmitters 140 m apart.
  Network net({{"a", 1, Position{0, 0}}, {"b", 1, Position{60, 0}}, {"c", 1, Position{140, 0}}, {"d", 1, Position{80, 0}}},
              {{"a", "b", 1, 0}, {"c", "d", 1, 0}});
  const double cs = 50;
  EXPECT_FALSE(mac::build_conflict_graph(net, cs, false).conflicts(0, 1));
  EXPECT_TRUE(mac::build_conflict_graph(net, cs, true).conflicts(0, 1));
}

TEST(ConflictGraph, SymmetricOnRandomLayouts) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0, 200);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<NodeSpec> nodes;
    for (int i = 0; i < 12; ++i) nodes.push_back({"n" + std::to_string(i), 1, Position{u(rng), u(rng)}});
    std::vector<LinkSpec> links;
    for (int i = 0; i < 12; ++i) links.push_back({nodes[i].id, nodes[(i * 5 + 3) % 12].id, 1, 0});
    const auto g = mac::build_conflict_graph(Network(nodes, links), 71.2, trial % 2);
    for (std::size_t a = 0; a < g.size(); ++a) {
      for (std::size_t b = 0; b < g.size(); ++b) EXPECT_EQ(g.conflicts(a, b), g.conflicts(b, a));
      EXPECT_FALSE(g.conflicts(a, a));
    }
  }
}

TEST(ConflictGraph, CliquesCoverEdges) {
  mac::ConflictGraph g(5);
  g.add_conflict(0, 1);
  g.add_conflict(1, 2);
  g.add_conflict(0, 2);
  g.add_conflict(3, 4);
  const auto cliques = g.maximal_cliques();
  ASSERT_EQ(cliques.size(), 2u);
  EXPECT_EQ(cliques[0], (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(cliques[1], (std::vector<std::size_t>{3, 4}));
}

TEST(ConflictGraph, NeedsPositions) {
  Network net({{"a", 1, {}}, {"b", 1, {}}}, {{"a", "b", 1, 0}});
  EXPECT_THROW(mac::build_conflict_graph(net, 71.2, false), MissingPosition);
}

TEST(Sinr, NoHiddenEqualsSnr) {
  const rf::RfConfig cfg;
  EXPECT_DOUBLE_EQ(mac::sinr_db(cfg, 30, {}), rf::snr_at_distance(cfg, 30));
  const auto net = parallel(2, 75);
  EXPECT_NEAR(mac::sinr_db(net, 0, {}, cfg), rf::snr_at_distance(cfg, 30), 1e-12);
}

TEST(Sinr, HiddenTransmitterAt75) {
  const rf::RfConfig cfg;
  const auto net = parallel(2, 75);
  const double s = mac::sinr_db(net, 0, {1}, cfg);
  EXPECT_NEAR(s, 12.5982, 1e-4);
  EXPECT_EQ(rf::McsTable::default_11ax().select(s)->index, 2);
}

TEST(Sinr, DoublingInterferencePower) {
  const rf::RfConfig cfg;
  EXPECT_NEAR(mac::sinr_db(cfg, 30, {10, 10}) - mac::sinr_db(cfg, 30, {10}), -3.01, 0.01);
}

TEST(HiddenFactor, EmptySetIsOne) {
  const auto net = parallel(2, 75);
  EXPECT_DOUBLE_EQ(mac::hidden_factor(net, 0, {}, {}, rf::McsTable::default_11ax()), 1.0);
}

TEST(HiddenFactor, ReselectsFromSinr) {
  const auto net = parallel(2, 75);
  EXPECT_NEAR(8.6 * mac::hidden_factor(net, 0, {1}, {}, rf::McsTable::default_11ax()), 3.225, 1e-12);
}

TEST(HiddenFactor, BinaryCaptureAppliesMargin) {
  const auto net = parallel(2, 75);
  const auto& t = rf::McsTable::default_11ax();
  // 12.6 dB is below 21 - 5 dB, so the frame fails.
  EXPECT_DOUBLE_EQ(mac::hidden_factor(net, 0, {1}, {}, t, mac::HiddenMode::BinaryCapture), mac::kMinFactor);
  EXPECT_DOUBLE_EQ(mac::hidden_factor(parallel(2, 200), 0, {1}, {}, t, mac::HiddenMode::BinaryCapture), 1.0);
}

TEST(HiddenFactor, FloorWhenNothingDecodes) {
  const auto net = parallel(2, 1, 100);  // 100 m links with a hidden tx 1 m away
  EXPECT_DOUBLE_EQ(mac::hidden_factor(net, 0, {1}, {}, rf::McsTable::default_11ax()), mac::kMinFactor);
}

TEST(ActiveSets, SplitsByConflict) {
  const auto net = parallel(3, 40);
  const auto g = mac::build_conflict_graph(net, rf::carrier_sense_range({}), false);
  const auto sets = mac::active_sets(g, 0, {0, 1, 2});
  EXPECT_EQ(sets.contenders, (std::vector<std::size_t>{1}));
  EXPECT_EQ(sets.hidden, (std::vector<std::size_t>{2}));
}

TEST(Csma, SoleLinkIsOne) {
  const auto net = parallel(3, 40);
  mac::CsmaBianchi model(net, {}, rf::McsTable::default_11ax());
  EXPECT_DOUBLE_EQ(model.factor(1, {1}).f, 1.0);
}

TEST(Csma, TwoContendingLinks) {
  const auto net = parallel(2, 5);
  mac::CsmaBianchi model(net, {}, rf::McsTable::default_11ax());
  const auto f = model.factor(0, {0, 1});
  EXPECT_EQ(f.n, 2u);
  EXPECT_NEAR(8.6 * f.f, 3.7874, 1e-4);
}

TEST(Csma, MixedRegime) {
  const auto net = parallel(3, 40);
  mac::CsmaBianchi model(net, {}, rf::McsTable::default_11ax());
  EXPECT_NEAR(8.6 * model.factor(1, {0, 1, 2}).f, 2.4615, 1e-4);
  // Outer link: one contender, C hidden at 85.4 m drops it to MCS 2.
  const auto a = model.factor(0, {0, 1, 2});
  EXPECT_EQ(a.n, 2u);
  EXPECT_NEAR(a.f_ht, 3.225 / 8.6, 1e-12);
  EXPECT_NEAR(a.f, 0.165150, 1e-6);
}

TEST(Csma, MonotoneInActiveSet) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0, 150);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<NodeSpec> nodes;
    std::vector<LinkSpec> links;
    for (int i = 0; i < 6; ++i) {
      const double x = u(rng), y = u(rng);
      nodes.push_back({"t" + std::to_string(i), 1, Position{x, y}});
      nodes.push_back({"r" + std::to_string(i), 1, Position{x + 10 + u(rng) / 10, y}});
      links.push_back({nodes[2 * i].id, nodes[2 * i + 1].id, 8.6, 0});
    }
    Network net(nodes, links);
    mac::CsmaBianchi model(net, {}, rf::McsTable::default_11ax());
    std::vector<std::size_t> active{0};
    double prev = model.factor(0, active).f;
    for (std::size_t l = 1; l < 6; ++l) {
      active.push_back(l);
      const double f = model.factor(0, active).f;
      EXPECT_LE(f, prev + 1e-15) << "trial " << trial << " link " << l;
      prev = f;
    }
  }
}

TEST(Csma, FactorAlwaysClamped) {
  const auto net = parallel(8, 5);
  mac::CsmaBianchi model(net, {}, rf::McsTable::default_11ax());
  for (std::size_t l = 0; l < 8; ++l) {
    const auto f = model.factor(l, all_links(8)).f;
    EXPECT_GE(f, mac::kMinFactor);
    EXPECT_LE(f, mac::kMaxFactor);
  }
}

TEST(Factory, KnownNames) {
  const auto net = parallel(2, 5);
  EXPECT_EQ(mac::make_interference("none", net, {}, rf::McsTable::default_11ax())->name(), "none");
  EXPECT_EQ(mac::make_interference("csma_bianchi", net, {}, rf::McsTable::default_11ax())->name(), "csma_bianchi");
  EXPECT_THROW(mac::make_interference("psychic", net, {}, rf::McsTable::default_11ax()), std::invalid_argument);
  EXPECT_EQ(mac::parse_hidden_mode("binary_capture"), mac::HiddenMode::BinaryCapture);
}

}  // namespace
