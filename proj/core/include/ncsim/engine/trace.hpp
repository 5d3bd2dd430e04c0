#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ncsim::engine {

struct DetailField {
  using Value = std::variant<std::int64_t, double, std::string, bool, std::vector<std::string>,
                             std::vector<std::pair<std::string, std::string>>>;
  std::string key;
  Value value;
  int decimals = 3;  // for doubles
};

struct TraceEvent {
  std::int64_t t_us = 0;
  std::string kind;
  std::optional<std::string> dag;
  std::optional<std::string> task;
  std::optional<std::int64_t> flow;
  std::optional<std::string> node;
  std::optional<std::string> link;
  std::vector<DetailField> detail;
};

class TraceSink {
 public:
  virtual ~TraceSink() = default;
  virtual void write(const TraceEvent& event) = 0;
};

// Keeps every event in memory.
class MemoryTraceSink final : public TraceSink {
 public:
  void write(const TraceEvent& event) override { events_.push_back(event); }
  const std::vector<TraceEvent>& events() const { return events_; }

 private:
  std::vector<TraceEvent> events_;
};

}  // namespace ncsim::engine
