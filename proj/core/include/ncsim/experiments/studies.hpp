#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ncsim/experiments/result.hpp"
#include "ncsim/experiments/topologies.hpp"
#include "ncsim/model.hpp"

namespace ncsim::experiments {

struct StudyOptions {
  std::uint64_t seed = kDefaultSeed;
  std::size_t workers = 1;  // 0 = hardware concurrency
};

struct FactorialCell {
  std::string network;
  std::string dag;
  std::string routing;
  std::string scheduler;
  std::string interference;
  double makespan = -1.0;    // seconds; negative when the run failed
  double wall_seconds = 0.0;
  std::string plan;          // "task=node;..." in task-id order
  std::string error;

  bool ok() const { return error.empty() && makespan >= 0.0; }
};

// Declaration order used for winner ties.
const std::vector<std::string>& study_schedulers();  // heft, cpop, round_robin
const std::vector<std::string>& study_routings();    // widest_path, shortest_path
const std::vector<std::string>& study_interference();  // none, csma_bianchi

struct NamedNetwork {
  std::string id;
  io::Scenario scenario;
};

std::vector<NamedNetwork> factorial_networks(std::uint64_t seed);  // grid 2x2, 3x3, 4x4

// Runs every network x dag x scheduler x routing x interference combination.
// Engine errors are recorded on the cell, never thrown.
std::vector<FactorialCell> run_grid(const std::vector<NamedNetwork>& networks, const std::vector<DagSpec>& dags,
                                    std::size_t workers);

std::vector<FactorialCell> factorial_study(const StudyOptions& options = {});

// network,dag,routing,scheduler,interference,makespan,status[,wall_s]
std::string cells_to_csv(const std::vector<FactorialCell>& cells, bool include_wall = false);

struct RegretRecord {
  std::string network;
  std::string dag;
  std::string routing;
  std::string winner_none;
  std::string winner_interference;
  bool inversion = false;
  double regret = 1.0;
};

struct RegretSummary {
  std::size_t triples = 0;
  std::size_t inversions = 0;
  double inversion_rate = 0.0;
  double mean_regret = 1.0;
  double max_regret = 1.0;
};

struct RegretAnalysis {
  std::vector<RegretRecord> records;
  RegretSummary summary;

  std::string to_csv() const;
};

// Min makespan wins; ties go to the earlier scheduler in study_schedulers().
std::string pick_winner(const std::vector<std::pair<std::string, double>>& makespans);

// Throws IncompleteGrid when a triple lacks a successful cell for some
// scheduler under either model.
RegretAnalysis regret_analysis(const std::vector<FactorialCell>& cells);

// Property checks over a complete factorial run: completion, per-run budget,
// interference never faster, HEFT/CPOP agreement on fork_join_5, and regret
// consistency when `regret` is given.
ExperimentResult factorial_summary(const std::vector<FactorialCell>& cells, const RegretAnalysis* regret,
                                   double per_run_budget_s = 2.0);

struct SlowdownPoint {
  std::string series;  // dag id
  double x = 0.0;      // data size in MB, or DAG count
  double makespan_none = 0.0;
  double makespan_interference = 0.0;
  double slowdown = 1.0;
};

struct SweepResult {
  std::vector<SlowdownPoint> points;
  ExperimentResult summary;  // property checks only

  // series,x,makespan_none,makespan_csma,slowdown
  std::string to_csv() const;
};

std::vector<double> ccr_data_sizes();  // 0, 1, 2, 5, 10, 20, 50, 100

// 3x3 grid, HEFT, shortest path, the three templates over ccr_data_sizes().
SweepResult ccr_sweep(const StudyOptions& options = {});

// k staggered fork-join DAGs, 0.5 s apart, k = 1..max_k.
SweepResult multidag_sweep(const StudyOptions& options = {}, std::size_t max_k = 5);

struct RggStudy {
  RggStats stats;
  std::vector<FactorialCell> cells;
  double total_wall_seconds = 0.0;
  ExperimentResult summary;
};

// 100 nodes in 500 m x 500 m, auto-link at 80 m, pipelines of 30/40/50 tasks.
RggStudy rgg_scalability(const StudyOptions& options = {});

}  // namespace ncsim::experiments
