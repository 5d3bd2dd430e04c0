#include "ncsim/io/jsonl_trace.hpp"

#include <cmath>

#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <yaml-cpp/yaml.h>

#include "ncsim/error.hpp"

#ifndef NCSIM_VERSION
#define NCSIM_VERSION "0.0.0"
#endif

namespace ncsim::io {

const char* library_version() { return NCSIM_VERSION; }

namespace {

std::string quote(const std::string& s) { return nlohmann::json(s).dump(); }

std::string fixed(double v, int decimals) {
  const double unit = std::pow(10.0, -decimals);
  if (std::abs(v) < 0.5 * unit) v = 0.0;
  if (!std::isfinite(v)) return "null";
  return fmt::format("{:.{}f}", v, decimals);
}

struct ValueWriter {
  int decimals;
  std::string operator()(std::int64_t v) const { return std::to_string(v); }
  std::string operator()(double v) const { return fixed(v, decimals); }
  std::string operator()(const std::string& v) const { return quote(v); }
  std::string operator()(bool v) const { return v ? "true" : "false"; }
  std::string operator()(const std::vector<std::string>& v) const {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + quote(v[i]);
    return out + "]";
  }
  std::string operator()(const std::vector<std::pair<std::string, std::string>>& v) const {
    std::string out = "{";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + quote(v[i].first) + ":" + quote(v[i].second);
    return out + "}";
  }
};

// YAML scalars keep their text; numbers and booleans become JSON numbers and
// booleans so the header reads naturally.
nlohmann::ordered_json yaml_to_json(const YAML::Node& node) {
  switch (node.Type()) {
    case YAML::NodeType::Map: {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (const auto& kv : node) obj[kv.first.as<std::string>()] = yaml_to_json(kv.second);
      return obj;
    }
    case YAML::NodeType::Sequence: {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto& v : node) arr.push_back(yaml_to_json(v));
      return arr;
    }
    case YAML::NodeType::Scalar: {
      const auto& s = node.Scalar();
      if (node.Tag() != "!") {
        if (s == "true") return true;
        if (s == "false") return false;
        char* end = nullptr;
        const long long i = std::strtoll(s.c_str(), &end, 10);
        if (!s.empty() && *end == '\0') return i;
        const double d = std::strtod(s.c_str(), &end);
        if (!s.empty() && *end == '\0') return d;
      }
      return s;
    }
    default: return nullptr;
  }
}

}  // namespace

std::string format_trace_line(const engine::TraceEvent& ev) {
  std::string out = "{\"t\":" + fixed(engine::from_micros(ev.t_us), 6) + ",\"kind\":" + quote(ev.kind);
  if (ev.dag) out += ",\"dag\":" + quote(*ev.dag);
  if (ev.task) out += ",\"task\":" + quote(*ev.task);
  if (ev.flow) out += ",\"flow\":" + std::to_string(*ev.flow);
  if (ev.node) out += ",\"node\":" + quote(*ev.node);
  if (ev.link) out += ",\"link\":" + quote(*ev.link);
  out += ",\"detail\":{";
  for (std::size_t i = 0; i < ev.detail.size(); ++i) {
    const auto& f = ev.detail[i];
    out += (i ? "," : "") + quote(f.key) + ":" + std::visit(ValueWriter{f.decimals}, f.value);
  }
  return out + "}}";
}

std::string format_meta_line(const Scenario& effective) {
  nlohmann::ordered_json meta;
  meta["kind"] = "meta";
  meta["scenario_hash"] = fmt::format("{:016x}", scenario_hash(effective));
  meta["seed"] = effective_seed(effective);
  meta["interference"] = effective.interference;
  meta["routing"] = effective.routing;
  meta["scheduler"] = effective.scheduler;
  meta["version"] = library_version();
  meta["config"] = yaml_to_json(YAML::Load(serialize_scenario(effective)));
  return meta.dump();
}

void JsonlTraceSink::write_meta(const Scenario& effective) {
  *out_ << format_meta_line(effective) << '\n';
  if (!*out_) throw IoError("failed writing trace header");
}

void JsonlTraceSink::write(const engine::TraceEvent& event) {
  *out_ << format_trace_line(event) << '\n';
  if (!*out_) throw IoError("failed writing trace");
}

}  // namespace ncsim::io
