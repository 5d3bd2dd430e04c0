#include "ncsim/io/manifest.hpp"

#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "ncsim/error.hpp"

namespace ncsim::io {

namespace {

template <typename T>
std::vector<T> list_of(const YAML::Node& node, const std::string& path) {
  if (!node) return {};
  if (!node.IsSequence()) throw SchemaError(path, "expected a list");
  std::vector<T> out;
  for (std::size_t i = 0; i < node.size(); ++i) {
    try {
      out.push_back(node[i].as<T>());
    } catch (const YAML::Exception&) {
      throw SchemaError(path + "[" + std::to_string(i) + "]", "wrong value type");
    }
  }
  return out;
}

}  // namespace

SweepManifest parse_manifest(const std::string& text, const std::filesystem::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ParseError(e.msg, e.mark.is_null() ? 0 : e.mark.line + 1, e.mark.is_null() ? 0 : e.mark.column + 1);
  }
  if (!root.IsMap()) throw SchemaError("", "manifest must be a mapping");
  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    if (key != "scenarios" && key != "matrix" && key != "workers") throw SchemaError(key, "unknown key");
  }

  SweepManifest m;
  m.base_dir = base_dir;
  for (const auto& s : list_of<std::string>(root["scenarios"], "scenarios")) {
    std::filesystem::path p(s);
    m.scenarios.push_back(p.is_absolute() || base_dir.empty() ? p : base_dir / p);
  }
  if (m.scenarios.empty()) throw SchemaError("scenarios", "at least one scenario is required");

  if (const auto matrix = root["matrix"]) {
    if (!matrix.IsMap()) throw SchemaError("matrix", "expected a mapping");
    for (const auto& kv : matrix) {
      const auto key = kv.first.as<std::string>();
      if (key != "interference" && key != "scheduler" && key != "routing" && key != "seed") {
        throw SchemaError("matrix." + key, "unknown key");
      }
    }
    m.interference = list_of<std::string>(matrix["interference"], "matrix.interference");
    m.scheduler = list_of<std::string>(matrix["scheduler"], "matrix.scheduler");
    m.routing = list_of<std::string>(matrix["routing"], "matrix.routing");
    m.seed = list_of<std::uint64_t>(matrix["seed"], "matrix.seed");
  }
  if (const auto w = root["workers"]) {
    try {
      m.workers = w.as<std::size_t>();
    } catch (const YAML::Exception&) {
      throw SchemaError("workers", "expected a non-negative integer");
    }
  }

  // Reject bad names up front rather than half-way through a batch.
  for (const auto& job : expand_manifest(m)) {
    Scenario probe;
    apply_overrides(probe, job.overrides);
  }
  return m;
}

SweepManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_manifest(ss.str(), path.parent_path());
}

std::vector<SweepJob> expand_manifest(const SweepManifest& m) {
  auto axis = [](const auto& values) {
    using T = typename std::decay_t<decltype(values)>::value_type;
    std::vector<std::optional<T>> out;
    for (const auto& v : values) out.emplace_back(v);
    if (out.empty()) out.emplace_back(std::nullopt);
    return out;
  };
  std::vector<SweepJob> jobs;
  for (const auto& scenario : m.scenarios) {
    for (const auto& i : axis(m.interference)) {
      for (const auto& s : axis(m.scheduler)) {
        for (const auto& r : axis(m.routing)) {
          for (const auto& seed : axis(m.seed)) {
            SweepJob job{scenario, {}};
            job.overrides.interference = i;
            job.overrides.scheduler = s;
            job.overrides.routing = r;
            job.overrides.seed = seed;
            jobs.push_back(std::move(job));
          }
        }
      }
    }
  }
  return jobs;
}

}  // namespace ncsim::io
