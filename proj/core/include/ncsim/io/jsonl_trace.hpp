#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "ncsim/engine/trace.hpp"
#include "ncsim/io/scenario.hpp"

namespace ncsim::io {

const char* library_version();

// One JSON object, no trailing newline. Times carry 6 decimals.
std::string format_trace_line(const engine::TraceEvent& event);

// Header object describing the run: hash, seed, model names, version and the
// effective configuration.
std::string format_meta_line(const Scenario& effective);

// Writes LF-terminated lines. Throws IoError when the stream fails.
class JsonlTraceSink final : public engine::TraceSink {
 public:
  explicit JsonlTraceSink(std::ostream& out) : out_(&out) {}

  void write_meta(const Scenario& effective);
  void write(const engine::TraceEvent& event) override;

 private:
  std::ostream* out_;
};

}  // namespace ncsim::io
