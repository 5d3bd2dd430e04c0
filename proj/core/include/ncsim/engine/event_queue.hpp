#pragma once

#include <cstdint>
#include <queue>
#include <vector>

namespace ncsim::engine {

// Declaration order is the processing order at equal timestamps.
enum class EventKind : std::uint8_t {
  DagInject,
  TaskComplete,
  TransferComplete,
  TaskReady,
  TaskStart,
  TransferStart,
};

const char* to_string(EventKind kind);

// Nearest microsecond, halves rounded up.
double round_time(double seconds);
std::int64_t to_micros(double seconds);
inline double from_micros(std::int64_t us) { return static_cast<double>(us) * 1e-6; }

struct Event {
  std::int64_t time_us = 0;
  EventKind kind = EventKind::DagInject;
  std::uint64_t tie_key = 0;  // orders equal-time events of one kind before seq
  std::uint64_t seq = 0;
  std::size_t a = 0;  // payload: dag index or transfer id
  std::size_t b = 0;  // payload: task index
};

// Min-heap with lazy cancellation: cancelled entries stay in the heap and are
// skipped when they reach the top.
class EventQueue {
 public:
  std::uint64_t push(std::int64_t time_us, EventKind kind, std::size_t a, std::size_t b = 0,
                     std::uint64_t tie_key = 0);
  void cancel(std::uint64_t seq);
  bool is_cancelled(std::uint64_t seq) const { return cancelled_[seq]; }

  // Pops the next live event; false when none remain.
  bool pop(Event& out);
  bool empty();
  std::size_t stale_skipped() const { return stale_; }

 private:
  struct Later {
    bool operator()(const Event& x, const Event& y) const;
  };
  std::priority_queue<Event, std::vector<Event>, Later> heap_;
  std::vector<bool> cancelled_;
  std::uint64_t next_seq_ = 0;
  std::size_t stale_ = 0;
};

}  // namespace ncsim::engine
