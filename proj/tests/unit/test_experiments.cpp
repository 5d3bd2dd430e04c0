#include <atomic>
#include <cmath>
#include <filesystem>
#include <set>

#include <gtest/gtest.h>

#include "ncsim/error.hpp"
#include "ncsim/experiments/analytic.hpp"
#include "ncsim/experiments/batch.hpp"
#include "ncsim/experiments/dag_templates.hpp"
#include "ncsim/experiments/report.hpp"
#include "ncsim/experiments/studies.hpp"
#include "ncsim/experiments/topologies.hpp"
#include "ncsim/experiments/validation_ladder.hpp"
#include "ncsim/io/scenario.hpp"
#include "ncsim/validate.hpp"

namespace {

using namespace ncsim;
using namespace ncsim::experiments;

std::set<std::string> fed_tasks(const DagSpec& dag) {
  std::set<std::string> out;
  for (const auto& e : dag.edges) out.insert(e.dst_task);
  return out;
}

TEST(Templates, ForkJoin) {
  const auto d = fork_join_dag();
  EXPECT_EQ(d.id, "fork_join_5");
  EXPECT_EQ(d.tasks.size(), 5u);
  EXPECT_EQ(d.edges.size(), 6u);
  for (const auto& t : d.tasks) EXPECT_EQ(t.compute_cost, 500.0);
  for (const auto& e : d.edges) EXPECT_EQ(e.data_size, 10.0);
}

TEST(Templates, DiamondCrossLinks) {
  const auto d = diamond_dag();
  EXPECT_EQ(d.tasks.size(), 10u);
  EXPECT_EQ(d.edges.size(), 4u + 8u + 4u);
  std::set<std::pair<std::string, std::string>> e;
  for (const auto& x : d.edges) e.insert({x.src_task, x.dst_task});
  EXPECT_TRUE(e.count({"T4", "T5"}));
  EXPECT_TRUE(e.count({"T2", "T7"}));
  EXPECT_TRUE(e.count({"T8", "T9"}));
}

TEST(Templates, PipelineLayers) {
  EXPECT_EQ(pipeline_layers(20), (std::vector<std::size_t>{1, 4, 6, 6, 3}));
  EXPECT_EQ(pipeline_layers(30), (std::vector<std::size_t>{1, 4, 6, 6, 6, 6, 1}));
  for (std::size_t n : {20, 30, 40, 50}) {
    std::size_t sum = 0;
    for (auto w : pipeline_layers(n)) sum += w;
    EXPECT_EQ(sum, n);
  }
}

TEST(Templates, PipelineHasSingleEntry) {
  for (std::size_t n : {20, 30, 40, 50}) {
    const auto d = pipeline_dag(n);
    const auto fed = fed_tasks(d);
    EXPECT_EQ(fed.size(), n - 1) << n;
    EXPECT_FALSE(fed.count("T0"));
    EXPECT_NO_THROW(validate_scenario({{"n", 1, {}}}, {}, {d}));
  }
}

TEST(Templates, ChainAndRename) {
  const auto c = chain_dag(4);
  EXPECT_EQ(c.edges.size(), 3u);
  const auto r = renamed(fork_join_dag(), "fj2", 1.5);
  EXPECT_EQ(r.id, "fj2");
  EXPECT_EQ(r.inject_at, 1.5);
  for (const auto& e : with_data_size(c, 0).edges) EXPECT_EQ(e.data_size, 0.0);
}

TEST(Topologies, GridLinkCounts) {
  const std::pair<std::size_t, std::size_t> expect[] = {{2, 6}, {3, 20}, {4, 42}};
  for (auto [k, links] : expect) {
    const auto spec = io::build_simulation(grid_scenario(k, k));
    EXPECT_EQ(spec.network.link_count(), 2 * links) << k;
    for (const auto& l : spec.network.links()) EXPECT_GT(l.bandwidth, 0.0);
  }
}

TEST(Topologies, RggStats) {
  RggStats stats;
  const auto s = rgg_scenario(100, 500, 80, 42, &stats);
  EXPECT_EQ(s.nodes.size(), 100u);
  EXPECT_GE(stats.undirected_links, 250u);
  EXPECT_LE(stats.undirected_links, 400u);
  EXPECT_GE(stats.average_degree, 5.0);
  EXPECT_LE(stats.average_degree, 8.0);
  EXPECT_NEAR(stats.average_degree, 2.0 * stats.undirected_links / 100.0, 1e-12);
}

TEST(Topologies, RggSkipsDisconnectedSeeds) {
  bool retried = false;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    RggStats stats;
    rgg_scenario(40, 300, 70, seed, &stats);
    EXPECT_EQ(stats.seed_used, seed + stats.attempts - 1);
    retried = retried || stats.attempts > 1;
  }
  EXPECT_TRUE(retried);
  EXPECT_THROW(rgg_scenario(30, 5000, 10, 1), Error);
}

TEST(Analytic, Basics) {
  const analytic::Context ctx;
  EXPECT_NEAR(analytic::snr_db(ctx, 1), 68.573, 1e-3);
  EXPECT_DOUBLE_EQ(analytic::link_rate(ctx, 30), 8.6);
  EXPECT_DOUBLE_EQ(analytic::link_rate(ctx, 140), 0.0);
  EXPECT_NEAR(analytic::cs_range(ctx), 71.191, 1e-3);
  EXPECT_DOUBLE_EQ(analytic::nway_rate(ctx, 8.6, 1), 8.6);
  EXPECT_NEAR(analytic::nway_rate(ctx, 8.6, 3), 2.4615, 1e-4);
  EXPECT_NEAR(analytic::nway_rate(ctx, 8.6, 5), 1.4072, 1e-4);
}

TEST(Analytic, ThreeLinkPhases) {
  const analytic::Context ctx;
  const struct {
    double s, a, b;
  } rows[] = {{10, 2.4615, 2.4615}, {40, 1.8608, 2.4615}, {70, 2.8406, 2.7207}, {100, 4.3, 3.8222}, {150, 6.45, 5.16}};
  for (const auto& r : rows) {
    const auto p = analytic::predict_simultaneous(ctx, analytic::parallel_links(3, r.s), 10);
    EXPECT_NEAR(p.average_rate[0], r.a, 1e-4) << r.s;
    EXPECT_NEAR(p.average_rate[1], r.b, 1e-4) << r.s;
    EXPECT_NEAR(p.average_rate[2], r.a, 1e-4) << r.s;
  }
}

TEST(Result, ToleranceAndCsv) {
  ExperimentResult r;
  r.name = "t";
  r.tolerance = 0.001;
  EXPECT_TRUE(r.add("s", 1, 1.0, 1.001).pass);
  EXPECT_FALSE(r.add("s", 2, 1.0, 1.0011).pass);
  EXPECT_TRUE(r.add("s", 3, 1.0, 1.05, {}, 0.1).pass);
  EXPECT_FALSE(r.add("s", 4, 1.0, std::nan("")).pass);
  EXPECT_EQ(r.failures(), 2u);
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.to_csv().substr(0, r.to_csv().find('\n')), "series,x,predicted,simulated,abs_error,rel_error,pass,note");
  ASSERT_NE(r.find("s", 3), nullptr);
  EXPECT_EQ(r.find("s", 9), nullptr);
}

TEST(Ladder, DistanceSweep) {
  const auto r = exp_distance_sweep();
  EXPECT_TRUE(r.passed()) << r.to_csv();
  EXPECT_DOUBLE_EQ(r.find("rate", 140)->simulated, 0.0);
  EXPECT_DOUBLE_EQ(r.find("rate", 1)->simulated, 17.925);
}

TEST(Ladder, TwoLinks) {
  const auto r = exp_parallel_separation(2);
  EXPECT_TRUE(r.passed()) << r.to_csv();
  EXPECT_NEAR(r.find("A", 75)->simulated, 3.225, 1e-3);
  EXPECT_NEAR(r.find("A", 90)->simulated, 4.3, 1e-3);
}

TEST(Ladder, Bianchi) { EXPECT_TRUE(bianchi_reproduction().passed()); }

TEST(Winner, TiesKeepSchedulerOrder) {
  EXPECT_EQ(pick_winner({{"heft", 5}, {"cpop", 5}, {"round_robin", 5}}), "heft");
  EXPECT_EQ(pick_winner({{"round_robin", 4}, {"cpop", 4}, {"heft", 5}}), "cpop");
  EXPECT_EQ(pick_winner({{"heft", 10}, {"cpop", 9}, {"round_robin", 3}}), "round_robin");
}

std::vector<FactorialCell> triple(double heft_none, double rr_none, double heft_csma, double rr_csma) {
  std::vector<FactorialCell> cells;
  auto add = [&](const char* sched, const char* model, double ms) {
    FactorialCell c;
    c.network = "g";
    c.dag = "d";
    c.routing = "widest_path";
    c.scheduler = sched;
    c.interference = model;
    c.makespan = ms;
    cells.push_back(c);
  };
  add("heft", "none", heft_none);
  add("cpop", "none", heft_none + 1);
  add("round_robin", "none", rr_none);
  add("heft", "csma_bianchi", heft_csma);
  add("cpop", "csma_bianchi", heft_csma + 1);
  add("round_robin", "csma_bianchi", rr_csma);
  return cells;
}

TEST(Regret, InversionRatio) {
  const auto r = regret_analysis(triple(100, 300, 1396.9, 520.6));
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].winner_none, "heft");
  EXPECT_EQ(r.records[0].winner_interference, "round_robin");
  EXPECT_TRUE(r.records[0].inversion);
  EXPECT_NEAR(r.records[0].regret, 2.68, 0.005);
  EXPECT_DOUBLE_EQ(r.summary.inversion_rate, 1.0);
}

TEST(Regret, SameWinnerIsOne) {
  const auto r = regret_analysis(triple(100, 300, 150, 400));
  EXPECT_FALSE(r.records[0].inversion);
  EXPECT_DOUBLE_EQ(r.records[0].regret, 1.0);
  EXPECT_DOUBLE_EQ(r.summary.inversion_rate, 0.0);
  EXPECT_DOUBLE_EQ(r.summary.mean_regret, 1.0);
}

TEST(Regret, IncompleteGrid) {
  auto cells = triple(1, 2, 3, 4);
  cells.pop_back();
  EXPECT_THROW(regret_analysis(cells), IncompleteGrid);
  cells = triple(1, 2, 3, 4);
  cells[2].error = "deadlock";
  EXPECT_THROW(regret_analysis(cells), IncompleteGrid);
}

TEST(Batch, ParallelForRunsEveryIndexAndRethrows) {
  std::vector<std::atomic<int>> hits(100);
  parallel_for(100, 4, [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(parallel_for(10, 3,
                            [](std::size_t i) {
                              if (i == 7) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
  EXPECT_GE(resolve_workers(0), 1u);
  EXPECT_EQ(resolve_workers(3), 3u);
}

TEST(Batch, GridCellsRecordErrors) {
  NamedNetwork far{"far", two_node_scenario(140)};
  far.scenario.dags.clear();
  far.scenario.scheduler = "heft";
  far.scenario.routing = "widest_path";
  const auto cells = run_grid({far}, {chain_dag(2)}, 2);
  ASSERT_EQ(cells.size(), 12u);
  std::size_t failed = 0;
  for (const auto& c : cells) failed += c.ok() ? 0 : 1;
  EXPECT_GT(failed, 0u);
}

TEST(Report, SummaryAndScan) {
  ExperimentOutput out;
  out.summary.name = "demo";
  out.summary.tolerance = 0.01;
  out.summary.add("s", 1, 1, 1);
  out.summary.check("holds", true);
  out.files.push_back({"demo.csv", out.summary.to_csv()});
  const auto md = markdown_summary(out.summary);
  EXPECT_EQ(md.substr(0, md.find('\n')), "# demo: PASS");
  const auto dir = std::filesystem::temp_directory_path() / "ncsim_report_test";
  std::filesystem::remove_all(dir);
  write_experiment(dir, out);
  const auto entries = scan_results(dir);
  ASSERT_EQ(entries.size(), 1u);
  EXPECT_TRUE(entries[0].pass);
  EXPECT_NE(render_report(entries).find("demo"), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(Report, NamesAreKnown) {
  EXPECT_EQ(experiment_names().size(), 10u);
  EXPECT_THROW(run_experiment("exp99"), std::invalid_argument);
}

}  // namespace
