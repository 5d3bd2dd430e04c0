#include "ncsim/engine/event_queue.hpp"

#include <cmath>
#include <tuple>

namespace ncsim::engine {

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::DagInject: return "dag_inject";
    case EventKind::TaskComplete: return "task_complete";
    case EventKind::TransferComplete: return "transfer_complete";
    case EventKind::TaskReady: return "task_ready";
    case EventKind::TaskStart: return "task_start";
    case EventKind::TransferStart: return "transfer_start";
  }
  return "?";
}

std::int64_t to_micros(double seconds) { return static_cast<std::int64_t>(std::floor(seconds * 1e6 + 0.5)); }

double round_time(double seconds) { return from_micros(to_micros(seconds)); }

bool EventQueue::Later::operator()(const Event& x, const Event& y) const {
  return std::tie(x.time_us, x.kind, x.tie_key, x.seq) > std::tie(y.time_us, y.kind, y.tie_key, y.seq);
}

std::uint64_t EventQueue::push(std::int64_t time_us, EventKind kind, std::size_t a, std::size_t b,
                               std::uint64_t tie_key) {
  const std::uint64_t seq = next_seq_++;
  cancelled_.push_back(false);
  heap_.push(Event{time_us, kind, tie_key, seq, a, b});
  return seq;
}

void EventQueue::cancel(std::uint64_t seq) {
  if (seq < cancelled_.size()) cancelled_[seq] = true;
}

bool EventQueue::pop(Event& out) {
  while (!heap_.empty()) {
    out = heap_.top();
    heap_.pop();
    if (!cancelled_[out.seq]) return true;
    ++stale_;
  }
  return false;
}

bool EventQueue::empty() {
  while (!heap_.empty() && cancelled_[heap_.top().seq]) {
    heap_.pop();
    ++stale_;
  }
  return heap_.empty();
}

}  // namespace ncsim::engine
