#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "ncsim/experiments/result.hpp"
#include "ncsim/experiments/studies.hpp"

namespace ncsim::experiments {

struct ExperimentOutput {
  ExperimentResult summary;
  std::vector<std::pair<std::string, std::string>> files;  // file name -> contents
};

// exp1, exp2, exp4, exp7, bianchi, factorial, regret, ccr, multidag, rgg.
const std::vector<std::string>& experiment_names();

// Throws std::invalid_argument for an unknown name.
ExperimentOutput run_experiment(const std::string& name, const StudyOptions& options = {});

// First line is "# <name>: PASS" or "# <name>: FAIL".
std::string markdown_summary(const ExperimentResult& result);

// Writes every file plus <name>.md into `dir`, creating it. Throws IoError.
void write_experiment(const std::filesystem::path& dir, const ExperimentOutput& output);

struct ReportEntry {
  std::string name;
  bool pass = false;
  std::string summary_file;
  std::vector<std::string> data_files;
};

// Scans `dir` for experiment summaries. Throws IoError if it is not a directory.
std::vector<ReportEntry> scan_results(const std::filesystem::path& dir);
std::string render_report(const std::vector<ReportEntry>& entries);

}  // namespace ncsim::experiments
