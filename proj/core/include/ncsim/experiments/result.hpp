#pragma once

#include <optional>
#include <string>
#include <vector>

namespace ncsim::experiments {

struct ExperimentPoint {
  std::string series;
  double x = 0.0;
  double predicted = 0.0;
  double simulated = 0.0;
  double abs_error = 0.0;
  double rel_error = 0.0;
  bool pass = true;
  std::string note;
};

// Named yes/no property, e.g. "rate(75) < rate(70)".
struct PropertyCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ExperimentResult {
  std::string name;
  double tolerance = 0.0;
  std::vector<ExperimentPoint> points;
  std::vector<PropertyCheck> checks;
  std::vector<std::string> notes;

  // Records the point and judges it against `tolerance` unless a per-point
  // tolerance is given.
  ExperimentPoint& add(const std::string& series, double x, double predicted, double simulated,
                       std::string note = {}, std::optional<double> point_tolerance = std::nullopt);
  PropertyCheck& check(const std::string& name, bool pass, std::string detail = {});
  const ExperimentPoint* find(const std::string& series, double x) const;
  bool passed() const;
  std::size_t failures() const;

  // series,x,predicted,simulated,abs_error,rel_error,pass,note
  std::string to_csv() const;
};

}  // namespace ncsim::experiments
