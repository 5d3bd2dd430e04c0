// One line per acceptance criterion. `--criterion N` runs a single one; the
// exit status is nonzero when any selected criterion fails.

#include <chrono>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "ncsim/engine/engine.hpp"
#include "ncsim/experiments/dag_templates.hpp"
#include "ncsim/experiments/studies.hpp"
#include "ncsim/experiments/topologies.hpp"
#include "ncsim/experiments/validation_ladder.hpp"
#include "ncsim/io/scenario.hpp"
#include "ncsim/mac/bianchi.hpp"
#include "ncsim/mac/interference.hpp"
#include "ncsim/rf/phy.hpp"
#include "ncsim/sched/schedulers.hpp"
#include "oracles.hpp"

namespace {

using namespace ncsim;
using namespace ncsim::experiments;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::vector<std::string> failures;
  std::string summary;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failures.push_back(what);
    }
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool within(double a, double b, double tol) { return std::isfinite(a) && std::abs(a - b) <= tol + 1e-12; }

// Reference tables quoted as published, three or two decimals.
struct DistanceRow {
  double d, snr, rate;
};
const DistanceRow kDistanceRows[] = {{1, 68.58, 17.925}, {12, 36.20, 14.338}, {30, 24.27, 8.600}, {50, 17.61, 4.300},
                                     {75, 12.33, 3.225}, {105, 7.94, 1.075},  {140, 4.19, 0.000}};

struct ThreeLinkRow {
  double s, a, b;
};
const ThreeLinkRow kThreeLinkRows[] = {{10, 2.461, 2.461}, {35, 2.461, 2.461},  {40, 1.861, 2.461},
                                       {50, 2.174, 2.461}, {70, 2.840, 2.720},  {75, 3.225, 2.867},
                                       {100, 4.300, 3.822}, {150, 6.450, 5.160}};

const double kEtaColumn[] = {0.881, 0.859, 0.837, 0.818, 0.802, 0.788, 0.726};  // n = 2..8

Verdict ac1() {
  Verdict v;
  const auto t0 = Clock::now();
  const auto r = exp_distance_sweep();
  const double elapsed = seconds_since(t0);
  const rf::RfConfig cfg;
  for (const auto& row : kDistanceRows) {
    const double snr = rf::snr_at_distance(cfg, row.d);
    v.require(within(snr, row.snr, 0.05), fmt::format("snr({}) = {:.3f}, want {:.2f}", row.d, snr, row.snr));
    const auto* p = r.find("rate", row.d);
    v.require(p && p->simulated == row.rate,
              fmt::format("rate({}) = {}, want {:.3f}", row.d, p ? p->simulated : NAN, row.rate));
  }
  v.require(r.passed(), "experiment points outside tolerance");
  v.require(elapsed < 5.0, fmt::format("runtime {:.2f} s", elapsed));
  v.summary = fmt::format("7 distances, runtime {:.3f} s", elapsed);
  return v;
}

Verdict ac2() {
  Verdict v;
  const auto r = exp_parallel_separation(2);
  for (double s : two_link_separations()) {
    double want = NAN;
    if (s <= 70) want = 3.787;
    if (s == 75) want = 3.225;
    if (s == 90) want = 4.300;
    if (s == 130) want = 6.450;
    if (std::isnan(want)) continue;
    for (const char* link : {"A", "B"}) {
      const auto* p = r.find(link, s);
      v.require(p && within(p->simulated, want, 0.001),
                fmt::format("{}({}) = {:.4f}, want {:.3f}", link, s, p ? p->simulated : NAN, want));
    }
  }
  const auto* r70 = r.find("A", 70);
  const auto* r75 = r.find("A", 75);
  v.require(r70 && r75 && r75->simulated < r70->simulated, "no dip between 70 and 75 m");
  v.require(r.passed(), "simulation disagrees with prediction");
  v.summary = fmt::format("rate(70) = {:.4f}, rate(75) = {:.4f}", r70 ? r70->simulated : NAN,
                          r75 ? r75->simulated : NAN);
  return v;
}

Verdict ac3() {
  Verdict v;
  const auto r = exp_parallel_separation(3);
  for (const auto& row : kThreeLinkRows) {
    const auto* a = r.find("A", row.s);
    const auto* b = r.find("B", row.s);
    const auto* c = r.find("C", row.s);
    v.require(a && within(a->simulated, row.a, 0.001),
              fmt::format("R_A({}) = {:.4f}, want {:.3f}", row.s, a ? a->simulated : NAN, row.a));
    v.require(b && within(b->simulated, row.b, 0.001),
              fmt::format("R_B({}) = {:.4f}, want {:.3f}", row.s, b ? b->simulated : NAN, row.b));
    v.require(c && a && within(c->simulated, a->simulated, 1e-9), fmt::format("R_C != R_A at {}", row.s));
  }
  const auto* a70 = r.find("A", 70);
  const auto* b70 = r.find("B", 70);
  v.require(a70 && b70 && a70->simulated > b70->simulated, "no crossover at 70 m");
  v.require(r.passed(), "simulation disagrees with phase prediction");
  v.summary = "8 separations";
  return v;
}

Verdict ac4() {
  Verdict v;
  const auto p = mac::bianchi_profile("bianchi-fhss-1997");
  const double want[] = {0.847311, 0.836828};
  int worst_iter = 0;
  double worst_res = 0.0;
  for (int n = 2; n <= 3; ++n) {
    const auto s = mac::saturation_throughput(p, n);
    v.require(within(s.s, want[n - 2], 1e-4), fmt::format("S(n={}) = {:.6f}", n, s.s));
  }
  for (int n = 2; n <= 50; ++n) {
    const auto fp = mac::solve_bianchi(p, n);
    worst_iter = std::max(worst_iter, fp.iterations);
    worst_res = std::max(worst_res, fp.residual);
  }
  v.require(worst_res <= 1e-10, fmt::format("residual {:.2e}", worst_res));
  v.require(worst_iter <= 40, fmt::format("{} iterations", worst_iter));
  v.summary = fmt::format("max residual {:.1e}, max iterations {}", worst_res, worst_iter);
  return v;
}

Verdict ac5() {
  Verdict v;
  auto p = mac::bianchi_profile("bianchi-fhss-1997");
  p.w_min = 32;
  p.max_backoff_stage = 5;
  for (int n = 5; n < 50; ++n) {
    v.require(mac::saturation_throughput(p, n + 1).s < mac::saturation_throughput(p, n).s,
              fmt::format("W=32 m=5 not decreasing at n={}", n));
  }
  p.w_min = 128;
  p.max_backoff_stage = 3;
  bool up = false, down = false;
  for (int n = 5; n < 10; ++n) {
    const double d = mac::saturation_throughput(p, n + 1).s - mac::saturation_throughput(p, n).s;
    up = up || d > 0;
    down = down || d < 0;
  }
  v.require(up && down, "W=128 m=3 monotonic on [5, 10]");
  v.summary = "decreasing for W=32 m=5; rises then falls for W=128 m=3";
  return v;
}

Verdict ac6() {
  Verdict v;
  const auto r = exp_nway_contention(8);
  mac::EfficiencyTable eta;
  for (int n = 2; n <= 8; ++n) {
    const double predicted = 8.6 * eta.eta(n) / n;
    const auto* p = r.find("per_link", n);
    v.require(p && within(p->simulated, predicted, 0.001),
              fmt::format("engine rate n={} = {:.4f}, formula {:.4f}", n, p ? p->simulated : NAN, predicted));
    v.require(within(eta.eta(n), kEtaColumn[n - 2], 0.02),
              fmt::format("eta({}) = {:.4f}, reference {:.3f}", n, eta.eta(n), kEtaColumn[n - 2]));
  }
  v.summary = fmt::format("eta(2) = {:.4f}, eta(8) = {:.4f}", eta.eta(2), eta.eta(8));
  return v;
}

std::string cell_key(const FactorialCell& c) { return c.network + "|" + c.dag + "|" + c.routing + "|" + c.scheduler; }

Verdict ac7() {
  Verdict v;
  StudyOptions opts;
  opts.workers = 1;
  const auto cells = factorial_study(opts);
  v.require(cells.size() == 108, fmt::format("{} cells", cells.size()));
  double slowest = 0.0;
  std::map<std::string, std::map<std::string, const FactorialCell*>> by_model;
  for (const auto& c : cells) {
    v.require(c.ok(), "failed cell " + cell_key(c) + " " + c.interference + ": " + c.error);
    slowest = std::max(slowest, c.wall_seconds);
    by_model[cell_key(c)][c.interference] = &c;
  }
  v.require(slowest < 2.0, fmt::format("slowest run {:.3f} s", slowest));
  for (const auto& [key, m] : by_model) {
    const auto* none = m.at("none");
    const auto* csma = m.at("csma_bianchi");
    v.require(csma->makespan >= none->makespan,
              fmt::format("{}: csma {:.3f} < none {:.3f}", key, csma->makespan, none->makespan));
  }
  std::map<std::string, std::map<std::string, std::string>> plans;
  for (const auto& c : cells) {
    if (c.dag == "fork_join_5" && c.scheduler != "round_robin") {
      plans[c.network + "|" + c.routing + "|" + c.interference][c.scheduler] = c.plan;
    }
  }
  for (const auto& [key, p] : plans) v.require(p.at("heft") == p.at("cpop"), "HEFT/CPOP differ on " + key);

  const auto again = factorial_study(opts);
  v.require(cells_to_csv(cells) == cells_to_csv(again), "repeated run not byte-identical");

  try {
    const auto regret = regret_analysis(cells);
    v.require(regret.summary.inversions >= 1, "no rank inversion");
    for (const auto& rec : regret.records) {
      v.require(rec.regret >= 1.0, fmt::format("regret {:.4f} < 1", rec.regret));
      v.require(rec.inversion == (rec.winner_none != rec.winner_interference), "inversion flag inconsistent");
      v.require(rec.inversion || rec.regret == 1.0, "same winner but regret != 1");
    }
    v.summary = fmt::format("108 runs, slowest {:.3f} s, {}/{} inversions, max regret {:.3f}",
                            slowest, regret.summary.inversions, regret.summary.triples, regret.summary.max_regret);
  } catch (const Error& e) {
    v.require(false, e.what());
  }
  return v;
}

Verdict ac8() {
  Verdict v;
  const auto sweep = ccr_sweep();
  std::map<std::string, std::vector<std::pair<double, double>>> curves;
  for (const auto& p : sweep.points) curves[p.series].push_back({p.x, p.slowdown});
  for (const auto& [dag, pts] : curves) {
    for (const auto& [x, s] : pts) {
      if (x == 0.0) v.require(s == 1.0, fmt::format("{} slowdown at 0 MB = {:.6f}", dag, s));
    }
  }
  const auto& pipe = curves["pipeline_20"];
  double best_x = -1, best = -1, first_x = INFINITY, last_x = -INFINITY;
  for (const auto& [x, s] : pipe) {
    if (x < 1.0) continue;
    first_x = std::min(first_x, x);
    last_x = std::max(last_x, x);
    if (s > best) {
      best = s;
      best_x = x;
    }
  }
  v.require(!pipe.empty(), "no pipeline_20 curve");
  v.require(best_x != first_x && best_x != last_x, fmt::format("pipeline_20 argmax at {} MB", best_x));
  v.summary = fmt::format("pipeline_20 peak {:.3f}x at {} MB", best, best_x);
  return v;
}

Verdict ac9() {
  Verdict v;
  const auto sweep = multidag_sweep({}, 5);
  std::vector<double> s;
  for (const auto& p : sweep.points) s.push_back(p.slowdown);
  v.require(s.size() == 5, fmt::format("{} points", s.size()));
  for (std::size_t k = 1; k < s.size(); ++k) {
    v.require(s[k] > s[k - 1], fmt::format("slowdown(k={}) = {:.4f} <= slowdown(k={}) = {:.4f}", k + 1, s[k], k, s[k - 1]));
  }
  std::string list;
  for (double x : s) list += fmt::format("{}{:.3f}", list.empty() ? "" : " ", x);
  v.summary = "slowdown k=1..5: " + list;
  return v;
}

Verdict ac10() {
  Verdict v;
  StudyOptions opts;
  opts.workers = 0;
  const auto study = rgg_scalability(opts);
  v.require(study.cells.size() == 36, fmt::format("{} cells", study.cells.size()));
  v.require(study.total_wall_seconds < 600.0, fmt::format("total wall {:.1f} s", study.total_wall_seconds));
  v.require(study.stats.undirected_links >= 250 && study.stats.undirected_links <= 400,
            fmt::format("{} links", study.stats.undirected_links));
  v.require(study.stats.average_degree >= 5.0 && study.stats.average_degree <= 8.0,
            fmt::format("degree {:.2f}", study.stats.average_degree));
  std::map<std::string, std::map<std::string, double>> ms;
  for (const auto& c : study.cells) {
    v.require(c.ok(), "failed " + cell_key(c) + " " + c.interference + ": " + c.error);
    ms[cell_key(c)][c.interference] = c.makespan;
  }
  double lo = INFINITY, hi = 0;
  for (const auto& [key, m] : ms) {
    const double s = m.at("csma_bianchi") / m.at("none");
    lo = std::min(lo, s);
    hi = std::max(hi, s);
    v.require(s > 1.0, fmt::format("{} slowdown {:.4f}", key, s));
  }
  v.summary = fmt::format("{} links, degree {:.2f}, wall {:.1f} s, slowdown {:.2f}x..{:.2f}x",
                          study.stats.undirected_links, study.stats.average_degree, study.total_wall_seconds, lo, hi);
  return v;
}

// Link index per consecutive node pair of a transfer route.
std::vector<std::size_t> route_links(const Network& net, const std::vector<std::string>& route) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i + 1 < route.size(); ++i) {
    out.push_back(*net.link_index(*net.node_index(route[i]), *net.node_index(route[i + 1])));
  }
  return out;
}

Verdict ac11() {
  Verdict v;
  std::size_t transfers = 0;
  double worst_bytes = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto scenario = oracle::random_scenario(seed);
    const auto a = oracle::run_traced(scenario);
    const auto b = oracle::run_traced(scenario);
    v.require(a.trace == b.trace, fmt::format("scenario {} traces differ", seed));
    for (const auto& t : a.metrics.transfers) {
      ++transfers;
      worst_bytes = std::max(worst_bytes, std::abs(t.transferred() - t.size_mb));
      v.require(within(t.transferred(), t.size_mb, 1e-3),
                fmt::format("scenario {} transfer {}->{} moved {:.6f} of {:.6f} MB", seed, t.src_task, t.dst_task,
                            t.transferred(), t.size_mb));
    }
    if (scenario.interference != "none") continue;
    // Without interference no link carries more than its bandwidth.
    const auto spec = io::build_simulation(scenario);
    std::vector<double> cuts;
    for (const auto& t : a.metrics.transfers) {
      for (const auto& p : t.phases) cuts.push_back(0.5 * (p.start + p.end));
    }
    for (double c : cuts) {
      std::vector<double> load(spec.network.link_count(), 0.0);
      for (const auto& t : a.metrics.transfers) {
        for (const auto& p : t.phases) {
          if (p.start <= c && c < p.end) {
            for (auto l : route_links(spec.network, t.route)) load[l] += p.rate;
          }
        }
      }
      for (std::size_t l = 0; l < load.size(); ++l) {
        v.require(load[l] <= spec.network.links()[l].bandwidth * (1 + 1e-12),
                  fmt::format("scenario {} link {} overloaded", seed, l));
      }
    }
  }

  // Fair share: k flows on one link split it exactly.
  for (int k = 2; k <= 8; ++k) {
    DagSpec dag{"fan", {{"S", 1, std::string("a")}}, {}, 0};
    for (int i = 0; i < k; ++i) {
      dag.tasks.push_back({"R" + std::to_string(i), 1, std::string("b")});
      dag.edges.push_back({"S", "R" + std::to_string(i), 1.0 + i});
    }
    engine::SimulationSpec spec;
    spec.network = Network({{"a", 1000, {}}, {"b", 1000, {}}}, {{"a", "b", 8.6, 0}});
    spec.dags = {dag};
    spec.scheduler = "manual";
    const auto m = engine::simulate(spec);
    for (const auto& t : m.transfers) {
      for (const auto& p : t.phases) {
        const double mid = 0.5 * (p.start + p.end);
        double sum = 0.0;
        int n = 0;
        for (const auto& u : m.transfers) {
          for (const auto& q : u.phases) {
            if (q.start <= mid && mid < q.end) {
              sum += q.rate;
              ++n;
            }
          }
        }
        v.require(std::abs(sum - 8.6) <= 1e-12 * 8.6, fmt::format("k={} sum {:.17g}", k, sum));
        v.require(p.rate == 8.6 / n, fmt::format("k={} rate {:.17g} with {} flows", k, p.rate, n));
      }
    }
  }

  // Monotone interference on random layouts.
  std::size_t monotone_checks = 0;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0, 160);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<NodeSpec> nodes;
    std::vector<LinkSpec> links;
    for (int i = 0; i < 6; ++i) {
      const double x = u(rng), y = u(rng);
      nodes.push_back({"t" + std::to_string(i), 1, Position{x, y}});
      nodes.push_back({"r" + std::to_string(i), 1, Position{x + 5 + u(rng) / 5, y + u(rng) / 10}});
      links.push_back({nodes[2 * i].id, nodes[2 * i + 1].id, 8.6, 0});
    }
    const Network net(nodes, links);
    mac::CsmaBianchi model(net, {}, rf::McsTable::default_11ax());
    for (std::size_t victim = 0; victim < 6; ++victim) {
      std::vector<std::size_t> active{victim};
      double prev = model.factor(victim, active).f;
      std::vector<std::size_t> order{0, 1, 2, 3, 4, 5};
      std::shuffle(order.begin(), order.end(), rng);
      for (auto l : order) {
        if (l == victim) continue;
        active.push_back(l);
        std::sort(active.begin(), active.end());
        const double f = model.factor(victim, active).f;
        ++monotone_checks;
        v.require(f <= prev, fmt::format("trial {} link {} factor rose {:.6f} -> {:.6f}", trial, victim, prev, f));
        prev = f;
      }
    }
  }

  // Routing against exhaustive path enumeration.
  std::size_t route_checks = 0;
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    const auto net = oracle::random_digraph(seed, 5, 8);
    for (auto model : {routing::RoutingModel::WidestPath, routing::RoutingModel::ShortestPath,
                       routing::RoutingModel::Direct}) {
      for (std::size_t s = 0; s < net.node_count(); ++s) {
        for (std::size_t d = 0; d < net.node_count(); ++d) {
          if (s == d) continue;
          const auto got = routing::find_route(model, net, s, d);
          const auto want = oracle::brute_force_route(model, net, s, d);
          ++route_checks;
          v.require(got.has_value() == want.has_value() && (!got || got->nodes == want->nodes),
                    fmt::format("digraph seed {} {} {}->{}", seed, routing::to_string(model), s, d));
        }
      }
    }
  }
  v.summary = fmt::format("20 scenarios, {} transfers (max byte error {:.1e} MB), {} monotone checks, {} route checks",
                          transfers, worst_bytes, monotone_checks, route_checks);
  return v;
}

Verdict ac12() {
  Verdict v;
  const Network base({{"slow", 100, {}}, {"fast", 200, {}}}, {});
  std::string detail;
  for (const auto& [data, bw] : {std::pair{0.0, 8.6}, std::pair{10.0, 0.001}}) {
    const Network net(base.nodes(), {{"slow", "fast", bw, 0}, {"fast", "slow", bw, 0}});
    const auto dag = fork_join_dag("fj", 500, data);
    const auto vn = sched::build_virtual_network(make_static_snapshot(net), routing::RoutingModel::WidestPath);
    const auto best = oracle::exhaustive_optimum(dag, net);
    for (const auto& [name, plan] : {std::pair{"heft", sched::schedule_heft(dag, vn)},
                                     std::pair{"cpop", sched::schedule_cpop(dag, vn)}}) {
      const double ms = oracle::engine_makespan(dag, net, plan);
      v.require(within(ms, best.best, 1e-6),
                fmt::format("{} data={} makespan {:.6f}, optimum {:.6f}", name, data, ms, best.best));
      if (data > 0) {
        for (const auto& [task, node] : plan.assignment) {
          v.require(node == "fast", fmt::format("{} put {} on {}", name, task, node));
        }
      }
    }
    detail += fmt::format("{}optimum {:.3f} s (data {} MB)", detail.empty() ? "" : ", ", best.best, data);
  }
  v.summary = detail + " over 32 placements";
  return v;
}

const std::vector<std::function<Verdict()>> kCriteria = {ac1, ac2, ac3, ac4, ac5, ac6,
                                                         ac7, ac8, ac9, ac10, ac11, ac12};

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::size_t> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      selected.push_back(std::strtoul(argv[++i], nullptr, 10));
    } else {
      fmt::print(stderr, "usage: {} [--criterion N]...\n", argv[0]);
      return 2;
    }
  }
  if (selected.empty()) {
    for (std::size_t i = 1; i <= kCriteria.size(); ++i) selected.push_back(i);
  }
  bool all = true;
  for (auto n : selected) {
    if (n < 1 || n > kCriteria.size()) {
      fmt::print(stderr, "no criterion {}\n", n);
      return 2;
    }
    Verdict v;
    const auto t0 = Clock::now();
    try {
      v = kCriteria[n - 1]();
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    all = all && v.pass;
    fmt::print("AC{:<2} {}  {} ({:.2f} s)\n", n, v.pass ? "PASS" : "FAIL", v.summary, seconds_since(t0));
    const std::size_t shown = std::min<std::size_t>(v.failures.size(), 10);
    for (std::size_t i = 0; i < shown; ++i) fmt::print("      - {}\n", v.failures[i]);
    if (v.failures.size() > shown) fmt::print("      ... {} more\n", v.failures.size() - shown);
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
