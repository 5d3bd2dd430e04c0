#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ncsim/engine/engine.hpp"
#include "ncsim/error.hpp"
#include "ncsim/experiments/batch.hpp"
#include "ncsim/experiments/report.hpp"
#include "ncsim/io/jsonl_trace.hpp"
#include "ncsim/io/manifest.hpp"
#include "ncsim/io/scenario.hpp"

namespace {

namespace fs = std::filesystem;
using namespace ncsim;

constexpr int kExitInput = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitMismatch = 4;

struct RunArgs {
  std::string scenario;
  std::string out;
  std::optional<std::string> interference;
  std::optional<std::string> routing;
  std::optional<std::string> scheduler;
  std::optional<std::uint64_t> seed;
  bool no_trace = false;
};

int cmd_run(const RunArgs& a) {
  auto scenario = io::load_scenario(a.scenario);
  io::Overrides o{a.interference, a.routing, a.scheduler, a.seed, std::nullopt};
  if (!a.out.empty()) o.output = a.out;
  io::apply_overrides(scenario, o);
  if (!scenario.seed) scenario.seed = io::effective_seed(scenario);
  auto spec = io::build_simulation(scenario);

  std::ofstream trace_file;
  std::optional<io::JsonlTraceSink> sink;
  if (!a.no_trace) {
    const fs::path path = scenario.output ? fs::path(*scenario.output) : fs::path(fs::path(a.scenario).stem().string() + ".jsonl");
    trace_file.open(path, std::ios::binary);
    if (!trace_file) throw IoError("cannot write trace " + path.string());
    sink.emplace(trace_file);
    sink->write_meta(scenario);
    std::cout << "trace: " << path.string() << "\n";
  }
  const auto metrics = engine::simulate(std::move(spec), sink ? &*sink : nullptr);
  std::cout << fmt::format("makespan: {:.6f} s\n", metrics.makespan);
  for (const auto& d : metrics.dags) {
    std::cout << fmt::format("  dag {}: injected {:.6f} finished {:.6f}\n", d.dag, d.inject_at, d.finish);
  }
  std::cout << fmt::format("events: {} (rate changes {})\n", metrics.events, metrics.rate_changes);
  return 0;
}

int cmd_validate(const std::string& path) {
  const auto scenario = io::load_scenario(path);
  const auto spec = io::build_simulation(scenario);
  std::cout << fmt::format("ok: {} nodes, {} links, {} dag(s)\n", spec.network.node_count(),
                           spec.network.link_count(), spec.dags.size());
  return 0;
}

int cmd_sweep(const std::string& path, std::optional<std::size_t> workers, const std::string& out) {
  const auto manifest = io::load_manifest(path);
  const auto rows = experiments::run_sweep(manifest, workers.value_or(manifest.workers));
  const auto csv = experiments::sweep_to_csv(rows);
  if (out.empty()) {
    std::cout << csv;
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!(f << csv)) throw IoError("cannot write " + out);
    std::cout << fmt::format("{} run(s) written to {}\n", rows.size(), out);
  }
  std::size_t failed = 0;
  for (const auto& r : rows) failed += r.error.empty() ? 0 : 1;
  if (failed) std::cerr << fmt::format("{} of {} run(s) failed\n", failed, rows.size());
  return failed ? kExitRuntime : 0;
}

int cmd_experiment(const std::string& name, const std::string& out_dir, std::size_t workers,
                   std::optional<std::uint64_t> seed) {
  experiments::StudyOptions options;
  options.workers = workers;
  if (seed) options.seed = *seed;
  std::vector<std::string> names;
  if (name == "all") {
    names = experiments::experiment_names();
  } else {
    names.push_back(name);
  }
  bool all_pass = true;
  for (const auto& n : names) {
    const auto output = experiments::run_experiment(n, options);
    experiments::write_experiment(out_dir, output);
    const auto failures = output.summary.failures();
    std::cout << fmt::format("{:<10} {}", n, failures ? "FAIL" : "PASS");
    if (failures) std::cout << fmt::format(" ({} failing)", failures);
    std::cout << fmt::format("  -> {}/{}.md\n", out_dir, n);
    all_pass = all_pass && failures == 0;
  }
  return all_pass ? 0 : kExitMismatch;
}

int cmd_report(const std::string& dir) {
  const auto entries = experiments::scan_results(dir);
  const auto text = experiments::render_report(entries);
  std::ofstream f(fs::path(dir) / "summary.md", std::ios::binary);
  if (!(f << text)) throw IoError("cannot write summary.md in " + dir);
  std::cout << text;
  for (const auto& e : entries) {
    if (!e.pass) return kExitMismatch;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flow-level DAG scheduling simulator with 802.11 interference"};
  app.set_version_flag("--version", std::string(io::library_version()));
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Simulate a scenario and write a JSONL trace");
  run_cmd->add_option("scenario", run.scenario, "Scenario YAML")->required();
  run_cmd->add_option("--out", run.out, "Trace path (default: scenario output, else <stem>.jsonl)");
  run_cmd->add_option("--interference", run.interference, "none | csma_bianchi");
  run_cmd->add_option("--routing", run.routing, "direct | widest_path | shortest_path");
  run_cmd->add_option("--scheduler", run.scheduler, "manual | round_robin | heft | cpop");
  run_cmd->add_option("--seed", run.seed, "Seed override");
  run_cmd->add_flag("--no-trace", run.no_trace, "Skip the trace file");

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "Parse and check a scenario without running it");
  validate_cmd->add_option("scenario", validate_path, "Scenario YAML")->required();

  std::string manifest_path, sweep_out;
  std::optional<std::size_t> sweep_workers;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a batch manifest");
  sweep_cmd->add_option("manifest", manifest_path, "Manifest YAML")->required();
  sweep_cmd->add_option("--workers,-j", sweep_workers, "Parallel workers (0 = all cores)");
  sweep_cmd->add_option("--out", sweep_out, "CSV path (default: stdout)");

  std::string exp_name, exp_out = "results";
  std::size_t exp_workers = 1;
  std::optional<std::uint64_t> exp_seed;
  auto* exp_cmd = app.add_subcommand("experiment", "Run a named experiment, or all");
  std::vector<std::string> choices = ncsim::experiments::experiment_names();
  choices.push_back("all");
  exp_cmd->add_option("name", exp_name, "Experiment name")->required()->check(CLI::IsMember(choices));
  exp_cmd->add_option("--out-dir,-o", exp_out, "Output directory");
  exp_cmd->add_option("--workers,-j", exp_workers, "Parallel workers (0 = all cores)");
  exp_cmd->add_option("--seed", exp_seed, "Topology seed for the studies");

  std::string report_dir;
  auto* report_cmd = app.add_subcommand("report", "Summarize an experiment output directory");
  report_cmd->add_option("results_dir", report_dir, "Directory written by `experiment`")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*validate_cmd) return cmd_validate(validate_path);
    if (*sweep_cmd) return cmd_sweep(manifest_path, sweep_workers, sweep_out);
    if (*exp_cmd) return cmd_experiment(exp_name, exp_out, exp_workers, exp_seed);
    if (*report_cmd) return cmd_report(report_dir);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const engine::DeadlockError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitRuntime;
}
