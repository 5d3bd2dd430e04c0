#include "ncsim/experiments/result.hpp"

#include <cmath>

#include <fmt/format.h>

namespace ncsim::experiments {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

ExperimentPoint& ExperimentResult::add(const std::string& series, double x, double predicted, double simulated,
                                       std::string note, std::optional<double> point_tolerance) {
  ExperimentPoint p;
  p.series = series;
  p.x = x;
  p.predicted = predicted;
  p.simulated = simulated;
  p.abs_error = std::abs(simulated - predicted);
  p.rel_error = predicted != 0.0 ? p.abs_error / std::abs(predicted) : (p.abs_error == 0.0 ? 0.0 : INFINITY);
  // Small slack so values that meet the tolerance exactly are not lost to rounding.
  const double tol = point_tolerance.value_or(tolerance);
  p.pass = std::isfinite(simulated) && p.abs_error <= tol * (1.0 + 1e-9) + 1e-12;
  p.note = std::move(note);
  points.push_back(std::move(p));
  return points.back();
}

PropertyCheck& ExperimentResult::check(const std::string& check_name, bool pass, std::string detail) {
  checks.push_back({check_name, pass, std::move(detail)});
  return checks.back();
}

const ExperimentPoint* ExperimentResult::find(const std::string& series, double x) const {
  for (const auto& p : points) {
    if (p.series == series && std::abs(p.x - x) < 1e-9) return &p;
  }
  return nullptr;
}

std::size_t ExperimentResult::failures() const {
  std::size_t n = 0;
  for (const auto& p : points) n += p.pass ? 0 : 1;
  for (const auto& c : checks) n += c.pass ? 0 : 1;
  return n;
}

bool ExperimentResult::passed() const { return failures() == 0; }

std::string ExperimentResult::to_csv() const {
  std::string out = "series,x,predicted,simulated,abs_error,rel_error,pass,note\n";
  for (const auto& p : points) {
    out += fmt::format("{},{:g},{:.6f},{:.6f},{:.3e},{:.3e},{},{}\n", csv_field(p.series), p.x, p.predicted,
                       p.simulated, p.abs_error, std::isfinite(p.rel_error) ? p.rel_error : -1.0,
                       p.pass ? "true" : "false", csv_field(p.note));
  }
  return out;
}

}  // namespace ncsim::experiments
