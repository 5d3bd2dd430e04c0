#include "ncsim/experiments/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "ncsim/error.hpp"
#include "ncsim/experiments/validation_ladder.hpp"

namespace ncsim::experiments {

namespace {

namespace fs = std::filesystem;

ExperimentOutput from_result(ExperimentResult r) {
  ExperimentOutput out;
  out.files.emplace_back(r.name + ".csv", r.to_csv());
  out.summary = std::move(r);
  return out;
}

ExperimentOutput from_sweep(SweepResult s) {
  ExperimentOutput out;
  out.files.emplace_back(s.summary.name + ".csv", s.to_csv());
  out.summary = std::move(s.summary);
  return out;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path.string());
  f << text;
  if (!f) throw IoError("write failed: " + path.string());
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> v{"exp1",      "exp2",   "exp4", "exp7",     "bianchi",
                                          "factorial", "regret", "ccr",  "multidag", "rgg"};
  return v;
}

ExperimentOutput run_experiment(const std::string& name, const StudyOptions& options) {
  if (name == "exp1") return from_result(exp_distance_sweep());
  if (name == "exp2") return from_result(exp_parallel_separation(2));
  if (name == "exp4") return from_result(exp_parallel_separation(3));
  if (name == "exp7") return from_result(exp_nway_contention());
  if (name == "bianchi") return from_result(bianchi_reproduction());
  if (name == "factorial" || name == "regret") {
    const auto cells = factorial_study(options);
    ExperimentOutput out;
    out.files.emplace_back("factorial.csv", cells_to_csv(cells));
    try {
      const auto regret = regret_analysis(cells);
      out.summary = factorial_summary(cells, &regret);
      out.files.emplace_back("regret.csv", regret.to_csv());
      out.summary.notes.push_back(fmt::format("inversion rate {:.1f}% ({} of {}), mean regret {:.3f}, max {:.3f}",
                                              100.0 * regret.summary.inversion_rate, regret.summary.inversions,
                                              regret.summary.triples, regret.summary.mean_regret,
                                              regret.summary.max_regret));
    } catch (const IncompleteGrid& e) {
      out.summary = factorial_summary(cells, nullptr);
      out.summary.check("regret analysis", false, e.what());
    }
    out.summary.name = name;
    return out;
  }
  if (name == "ccr") return from_sweep(ccr_sweep(options));
  if (name == "multidag") return from_sweep(multidag_sweep(options));
  if (name == "rgg") {
    auto study = rgg_scalability(options);
    ExperimentOutput out;
    out.files.emplace_back("rgg.csv", cells_to_csv(study.cells, true));
    out.summary = std::move(study.summary);
    return out;
  }
  throw std::invalid_argument("unknown experiment '" + name + "'");
}

std::string markdown_summary(const ExperimentResult& r) {
  std::string out = fmt::format("# {}: {}\n\n", r.name, r.passed() ? "PASS" : "FAIL");
  if (!r.points.empty()) {
    out += fmt::format("Default tolerance {:g}. {} point(s), {} failing.\n\n", r.tolerance, r.points.size(),
                       std::count_if(r.points.begin(), r.points.end(), [](const auto& p) { return !p.pass; }));
    out += "| series | x | predicted | simulated | abs error | pass |\n|---|---|---|---|---|---|\n";
    for (const auto& p : r.points) {
      if (p.note == "curve") continue;  // long property curves live in the CSV only
      out += fmt::format("| {} | {:g} | {:.6f} | {:.6f} | {:.2e} | {} |\n", p.series, p.x, p.predicted, p.simulated,
                         p.abs_error, p.pass ? "yes" : "**no**");
    }
    out += "\n";
  }
  if (!r.checks.empty()) {
    out += "| check | result | detail |\n|---|---|---|\n";
    for (const auto& c : r.checks) {
      out += fmt::format("| {} | {} | {} |\n", c.name, c.pass ? "pass" : "**FAIL**", c.detail);
    }
    out += "\n";
  }
  for (const auto& n : r.notes) out += "- " + n + "\n";
  return out;
}

void write_experiment(const fs::path& dir, const ExperimentOutput& output) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  for (const auto& [file, text] : output.files) write_file(dir / file, text);
  write_file(dir / (output.summary.name + ".md"), markdown_summary(output.summary));
}

std::vector<ReportEntry> scan_results(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw IoError(dir.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<ReportEntry> out;
  for (const auto& path : files) {
    if (path.extension() != ".md" || path.filename() == "summary.md") continue;
    std::ifstream f(path);
    std::string first;
    std::getline(f, first);
    const auto colon = first.rfind(": ");
    if (first.rfind("# ", 0) != 0 || colon == std::string::npos) continue;
    ReportEntry entry;
    entry.name = first.substr(2, colon - 2);
    entry.pass = first.substr(colon + 2) == "PASS";
    entry.summary_file = path.filename().string();
    out.push_back(std::move(entry));
  }
  for (const auto& path : files) {
    if (path.extension() != ".csv") continue;
    const auto stem = path.stem().string();
    for (auto& entry : out) {
      // regret.csv also belongs to the factorial run that produced it
      if (stem == entry.name || (entry.name == "factorial" && stem == "regret") ||
          (entry.name == "regret" && stem == "factorial")) {
        entry.data_files.push_back(path.filename().string());
      }
    }
  }
  return out;
}

std::string render_report(const std::vector<ReportEntry>& entries) {
  std::size_t passed = 0;
  for (const auto& e : entries) passed += e.pass ? 1 : 0;
  std::string out = fmt::format("# Experiment report\n\n{} of {} experiment(s) pass.\n\n", passed, entries.size());
  out += "| experiment | status | summary | data |\n|---|---|---|---|\n";
  for (const auto& e : entries) {
    std::string data;
    for (const auto& d : e.data_files) data += (data.empty() ? "" : ", ") + d;
    out += fmt::format("| {} | {} | {} | {} |\n", e.name, e.pass ? "PASS" : "FAIL", e.summary_file, data);
  }
  return out;
}

}  // namespace ncsim::experiments
