#include "ncsim/experiments/studies.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

#include <fmt/format.h>

#include "ncsim/error.hpp"
#include "ncsim/experiments/batch.hpp"
#include "ncsim/experiments/dag_templates.hpp"

namespace ncsim::experiments {

namespace {

struct CellSpec {
  std::size_t network;
  std::size_t dag;
  std::string routing;
  std::string scheduler;
  std::string interference;
};

std::string plan_digest(const PlacementPlan& plan) {
  std::string out;
  for (const auto& [task, node] : plan.assignment) {
    if (!out.empty()) out += ';';
    out += task + "=" + node;
  }
  return out;
}

FactorialCell run_cell(const NamedNetwork& net, const DagSpec& dag, const CellSpec& spec) {
  FactorialCell cell;
  cell.network = net.id;
  cell.dag = dag.id;
  cell.routing = spec.routing;
  cell.scheduler = spec.scheduler;
  cell.interference = spec.interference;
  auto scenario = net.scenario;
  scenario.dags = {dag};
  scenario.routing = spec.routing;
  scenario.scheduler = spec.scheduler;
  scenario.interference = spec.interference;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const auto metrics = run_scenario(scenario);
    cell.makespan = metrics.makespan;
    for (const auto& [id, plan] : metrics.plans) cell.plan += plan_digest(plan);
  } catch (const std::exception& e) {
    cell.error = e.what();
  }
  cell.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return cell;
}

double makespan_of(const io::Scenario& scenario, const std::string& interference) {
  auto s = scenario;
  s.interference = interference;
  return run_scenario(s).makespan;
}

std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace

const std::vector<std::string>& study_schedulers() {
  static const std::vector<std::string> v{"heft", "cpop", "round_robin"};
  return v;
}

const std::vector<std::string>& study_routings() {
  static const std::vector<std::string> v{"widest_path", "shortest_path"};
  return v;
}

const std::vector<std::string>& study_interference() {
  static const std::vector<std::string> v{"none", "csma_bianchi"};
  return v;
}

std::vector<NamedNetwork> factorial_networks(std::uint64_t seed) {
  std::vector<NamedNetwork> out;
  for (std::size_t n : {2, 3, 4}) out.push_back({fmt::format("grid{}x{}", n, n), grid_scenario(n, n, seed)});
  return out;
}

std::vector<FactorialCell> run_grid(const std::vector<NamedNetwork>& networks, const std::vector<DagSpec>& dags,
                                    std::size_t workers) {
  std::vector<CellSpec> specs;
  for (std::size_t n = 0; n < networks.size(); ++n) {
    for (std::size_t d = 0; d < dags.size(); ++d) {
      for (const auto& sched : study_schedulers()) {
        for (const auto& route : study_routings()) {
          for (const auto& model : study_interference()) specs.push_back({n, d, route, sched, model});
        }
      }
    }
  }
  return parallel_map<FactorialCell>(specs.size(), workers, [&](std::size_t i) {
    const auto& s = specs[i];
    return run_cell(networks[s.network], dags[s.dag], s);
  });
}

std::vector<FactorialCell> factorial_study(const StudyOptions& options) {
  return run_grid(factorial_networks(options.seed), factorial_templates(), options.workers);
}

std::string cells_to_csv(const std::vector<FactorialCell>& cells, bool include_wall) {
  std::string out = "network,dag,routing,scheduler,interference,makespan,status";
  out += include_wall ? ",wall_s\n" : "\n";
  for (const auto& c : cells) {
    out += fmt::format("{},{},{},{},{},{:.6f},{}", c.network, c.dag, c.routing, c.scheduler, c.interference,
                       c.ok() ? c.makespan : -1.0, c.ok() ? "ok" : csv_text("error: " + c.error));
    out += include_wall ? fmt::format(",{:.4f}\n", c.wall_seconds) : "\n";
  }
  return out;
}

std::string pick_winner(const std::vector<std::pair<std::string, double>>& makespans) {
  const auto& order = study_schedulers();
  auto rank = [&](const std::string& name) {
    const auto it = std::find(order.begin(), order.end(), name);
    return static_cast<std::size_t>(it - order.begin());
  };
  const std::pair<std::string, double>* best = nullptr;
  for (const auto& entry : makespans) {
    if (!best) {
      best = &entry;
      continue;
    }
    const double scale = std::max(std::abs(entry.second), std::abs(best->second));
    const bool tie = std::abs(entry.second - best->second) <= 1e-9 * scale;
    if ((!tie && entry.second < best->second) || (tie && rank(entry.first) < rank(best->first))) best = &entry;
  }
  return best ? best->first : std::string{};
}

RegretAnalysis regret_analysis(const std::vector<FactorialCell>& cells) {
  using Triple = std::tuple<std::string, std::string, std::string>;
  std::map<Triple, std::map<std::string, std::map<std::string, double>>> grid;  // triple -> model -> sched -> ms
  std::vector<Triple> order;
  for (const auto& c : cells) {
    const Triple key{c.network, c.dag, c.routing};
    if (!grid.count(key)) order.push_back(key);
    if (c.ok()) grid[key][c.interference][c.scheduler] = c.makespan;
    else grid[key];
  }

  RegretAnalysis out;
  double regret_sum = 0.0;
  for (const auto& key : order) {
    auto& models = grid[key];
    std::vector<std::pair<std::string, double>> none, csma;
    for (const auto& sched : study_schedulers()) {
      for (const auto& model : study_interference()) {
        if (!models[model].count(sched)) {
          throw IncompleteGrid(fmt::format("missing {} / {} for {} {} {}", sched, model, std::get<0>(key),
                                           std::get<1>(key), std::get<2>(key)));
        }
      }
      none.emplace_back(sched, models["none"][sched]);
      csma.emplace_back(sched, models["csma_bianchi"][sched]);
    }
    RegretRecord rec{std::get<0>(key), std::get<1>(key), std::get<2>(key), pick_winner(none), pick_winner(csma)};
    rec.inversion = rec.winner_none != rec.winner_interference;
    rec.regret = models["csma_bianchi"][rec.winner_none] / models["csma_bianchi"][rec.winner_interference];
    out.summary.inversions += rec.inversion ? 1 : 0;
    out.summary.max_regret = std::max(out.summary.max_regret, rec.regret);
    regret_sum += rec.regret;
    out.records.push_back(std::move(rec));
  }
  out.summary.triples = out.records.size();
  if (!out.records.empty()) {
    out.summary.inversion_rate = static_cast<double>(out.summary.inversions) / out.summary.triples;
    out.summary.mean_regret = regret_sum / out.summary.triples;
  }
  return out;
}

std::string RegretAnalysis::to_csv() const {
  std::string out = "network,dag,routing,winner_none,winner_csma,inversion,regret\n";
  for (const auto& r : records) {
    out += fmt::format("{},{},{},{},{},{},{:.6f}\n", r.network, r.dag, r.routing, r.winner_none,
                       r.winner_interference, r.inversion ? "true" : "false", r.regret);
  }
  return out;
}

ExperimentResult factorial_summary(const std::vector<FactorialCell>& cells, const RegretAnalysis* regret,
                                   double per_run_budget_s) {
  ExperimentResult r;
  r.name = "factorial";
  std::size_t ok = 0;
  double slowest = 0.0;
  for (const auto& c : cells) {
    ok += c.ok() ? 1 : 0;
    slowest = std::max(slowest, c.wall_seconds);
  }
  r.check(fmt::format("all {} runs complete", cells.size()), ok == cells.size(), fmt::format("{} ok", ok));
  r.check(fmt::format("every run under {:g} s", per_run_budget_s), slowest < per_run_budget_s,
          fmt::format("slowest {:.3f} s", slowest));

  std::map<std::string, const FactorialCell*> by_key;
  auto key = [](const FactorialCell& c, const std::string& sched, const std::string& model) {
    return c.network + "|" + c.dag + "|" + c.routing + "|" + sched + "|" + model;
  };
  for (const auto& c : cells) by_key[key(c, c.scheduler, c.interference)] = &c;

  std::size_t pairs = 0, slower = 0;
  std::size_t fj = 0, fj_same = 0;
  for (const auto& c : cells) {
    if (c.interference == "none" && c.ok()) {
      const auto it = by_key.find(key(c, c.scheduler, "csma_bianchi"));
      if (it != by_key.end() && it->second->ok()) {
        ++pairs;
        slower += it->second->makespan >= c.makespan * (1.0 - 1e-12) ? 1 : 0;
      }
    }
    if (c.dag == "fork_join_5" && c.scheduler == "heft") {
      const auto it = by_key.find(key(c, "cpop", c.interference));
      if (it != by_key.end()) {
        ++fj;
        fj_same += it->second->plan == c.plan ? 1 : 0;
      }
    }
  }
  r.check("makespan(csma_bianchi) >= makespan(none) in every cell", pairs > 0 && slower == pairs,
          fmt::format("{}/{}", slower, pairs));
  r.check("HEFT and CPOP plans identical on every fork_join_5 cell", fj > 0 && fj_same == fj,
          fmt::format("{}/{}", fj_same, fj));

  if (regret) {
    bool consistent = true;
    for (const auto& rec : regret->records) {
      consistent = consistent && rec.regret >= 1.0 - 1e-12 &&
                   rec.inversion == (rec.winner_none != rec.winner_interference) &&
                   (rec.inversion || std::abs(rec.regret - 1.0) < 1e-12);
    }
    r.check("regret >= 1 and inversion iff winners differ", consistent);
    r.check("at least one rank inversion", regret->summary.inversions > 0,
            fmt::format("{} of {} triples, mean regret {:.3f}, max {:.3f}", regret->summary.inversions,
                        regret->summary.triples, regret->summary.mean_regret, regret->summary.max_regret));
  }
  return r;
}

std::string SweepResult::to_csv() const {
  std::string out = "series,x,makespan_none,makespan_csma,slowdown\n";
  for (const auto& p : points) {
    out += fmt::format("{},{:g},{:.6f},{:.6f},{:.6f}\n", p.series, p.x, p.makespan_none, p.makespan_interference,
                       p.slowdown);
  }
  return out;
}

std::vector<double> ccr_data_sizes() { return {0, 1, 2, 5, 10, 20, 50, 100}; }

SweepResult ccr_sweep(const StudyOptions& options) {
  auto base = grid_scenario(3, 3, options.seed);
  base.scheduler = "heft";
  base.routing = "shortest_path";
  const auto templates = factorial_templates();
  const auto sizes = ccr_data_sizes();

  struct Job {
    std::size_t dag;
    double size;
  };
  std::vector<Job> jobs;
  for (std::size_t d = 0; d < templates.size(); ++d) {
    for (double s : sizes) jobs.push_back({d, s});
  }
  SweepResult out;
  out.points = parallel_map<SlowdownPoint>(jobs.size(), options.workers, [&](std::size_t i) {
    auto scenario = base;
    scenario.dags = {with_data_size(templates[jobs[i].dag], jobs[i].size)};
    SlowdownPoint p{templates[jobs[i].dag].id, jobs[i].size};
    p.makespan_none = makespan_of(scenario, "none");
    p.makespan_interference = makespan_of(scenario, "csma_bianchi");
    p.slowdown = p.makespan_interference / p.makespan_none;
    return p;
  });

  auto& r = out.summary;
  r.name = "ccr";
  for (const auto& dag : templates) {
    const SlowdownPoint* zero = nullptr;
    const SlowdownPoint* peak = nullptr;
    for (const auto& p : out.points) {
      if (p.series != dag.id) continue;
      if (p.x == 0.0) zero = &p;
      else if (!peak || p.slowdown > peak->slowdown) peak = &p;
    }
    if (zero) {
      r.check(dag.id + ": slowdown at 0 MB equals 1", zero->slowdown == 1.0, fmt::format("{:.6f}", zero->slowdown));
    }
    if (peak) {
      const bool interior = peak->x != sizes[1] && peak->x != sizes.back();
      const std::string detail = fmt::format("peak {:.3f}x at {:g} MB", peak->slowdown, peak->x);
      if (dag.id == "pipeline_20") {
        r.check(dag.id + ": slowdown peaks at an interior data size", interior, detail);
      } else {
        r.notes.push_back(dag.id + ": " + detail);
      }
    }
  }
  return out;
}

SweepResult multidag_sweep(const StudyOptions& options, std::size_t max_k) {
  auto base = grid_scenario(3, 3, options.seed);
  base.scheduler = "heft";
  base.routing = "shortest_path";
  const auto fj = fork_join_dag();

  SweepResult out;
  out.points = parallel_map<SlowdownPoint>(max_k, options.workers, [&](std::size_t i) {
    auto scenario = base;
    for (std::size_t j = 0; j <= i; ++j) {
      scenario.dags.push_back(renamed(fj, fmt::format("fj{}", j + 1), 0.5 * static_cast<double>(j)));
    }
    SlowdownPoint p{"fork_join_5", static_cast<double>(i + 1)};
    p.makespan_none = makespan_of(scenario, "none");
    p.makespan_interference = makespan_of(scenario, "csma_bianchi");
    p.slowdown = p.makespan_interference / p.makespan_none;
    return p;
  });

  auto& r = out.summary;
  r.name = "multidag";
  bool increasing = true, nondecreasing = true;
  std::string curve;
  for (std::size_t i = 0; i < out.points.size(); ++i) {
    curve += fmt::format("{}{:.3f}", i ? " " : "", out.points[i].slowdown);
    if (i == 0) continue;
    increasing = increasing && out.points[i].slowdown > out.points[i - 1].slowdown;
    nondecreasing = nondecreasing && out.points[i].makespan_none >= out.points[i - 1].makespan_none;
  }
  r.check("slowdown strictly increasing in k", increasing, curve);
  r.check("makespan(none) nondecreasing in k", nondecreasing);
  if (!out.points.empty()) {
    auto single = base;
    single.dags = {fj};
    const double baseline = makespan_of(single, "csma_bianchi");
    r.check("k=1 equals the single-DAG baseline", baseline == out.points.front().makespan_interference,
            fmt::format("{:.6f} vs {:.6f}", baseline, out.points.front().makespan_interference));
  }
  return out;
}

RggStudy rgg_scalability(const StudyOptions& options) {
  RggStudy out;
  const auto t0 = std::chrono::steady_clock::now();
  NamedNetwork net{"rgg100", rgg_scenario(100, 500.0, 80.0, options.seed, &out.stats)};
  net.id = fmt::format("rgg100_s{}", out.stats.seed_used);
  std::vector<DagSpec> dags;
  for (std::size_t n : {30, 40, 50}) dags.push_back(pipeline_dag(n));
  out.cells = run_grid({net}, dags, options.workers);
  out.total_wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  auto& r = out.summary;
  r.name = "rgg";
  const auto& s = out.stats;
  r.notes.push_back(fmt::format("seed {} after {} attempt(s)", s.seed_used, s.attempts));
  r.check("undirected links within [250, 400]", s.undirected_links >= 250 && s.undirected_links <= 400,
          std::to_string(s.undirected_links));
  r.check("average degree within [5, 8]", s.average_degree >= 5.0 && s.average_degree <= 8.0,
          fmt::format("{:.2f}", s.average_degree));
  std::size_t ok = 0;
  for (const auto& c : out.cells) ok += c.ok() ? 1 : 0;
  r.check(fmt::format("all {} runs complete", out.cells.size()), ok == out.cells.size(), fmt::format("{} ok", ok));
  r.check("total wall clock under 10 min", out.total_wall_seconds < 600.0,
          fmt::format("{:.1f} s", out.total_wall_seconds));

  std::size_t pairs = 0, slower = 0;
  double lo = INFINITY, hi = 0.0;
  for (const auto& c : out.cells) {
    if (c.interference != "none" || !c.ok()) continue;
    for (const auto& o : out.cells) {
      if (o.interference == "csma_bianchi" && o.dag == c.dag && o.routing == c.routing &&
          o.scheduler == c.scheduler && o.ok()) {
        ++pairs;
        const double sd = o.makespan / c.makespan;
        slower += sd > 1.0 ? 1 : 0;
        lo = std::min(lo, sd);
        hi = std::max(hi, sd);
      }
    }
  }
  r.check("interference slowdown > 1 in every cell", pairs == out.cells.size() / 2 && slower == pairs,
          fmt::format("{}/{}; range {:.2f}x..{:.2f}x", slower, pairs, lo, hi));
  return out;
}

}  // namespace ncsim::experiments
