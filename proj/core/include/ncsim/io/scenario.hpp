#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncsim/engine/engine.hpp"
#include "ncsim/mac/interference.hpp"
#include "ncsim/model.hpp"
#include "ncsim/rf/phy.hpp"

namespace ncsim::io {

struct NodeEntry {
  std::string id;
  std::optional<double> capacity;  // drawn from capacity_range when absent
  std::optional<Position> position;

  friend bool operator==(const NodeEntry&, const NodeEntry&) = default;
};

struct LinkEntry {
  std::string src;
  std::string dst;
  std::optional<double> bandwidth;  // absent when links are derived from RF
  std::optional<double> latency;
  bool directed = false;

  friend bool operator==(const LinkEntry&, const LinkEntry&) = default;
};

struct AutoLink {
  double max_distance_m = 80.0;
  std::optional<double> bandwidth;  // required when RF is off
  std::optional<double> latency;

  friend bool operator==(const AutoLink&, const AutoLink&) = default;
};

struct RfSection {
  bool enabled = false;
  rf::RfConfig config;
  std::string mcs_table = "11ax_20mhz";  // builtin name or CSV path

  friend bool operator==(const RfSection&, const RfSection&) = default;
};

struct Scenario {
  std::optional<std::uint64_t> seed;
  std::optional<std::pair<double, double>> capacity_range;
  std::vector<NodeEntry> nodes;
  std::vector<LinkEntry> links;
  std::optional<AutoLink> auto_link;
  RfSection rf;
  std::string interference = "none";
  mac::CsmaOptions interference_options;
  std::string routing = "widest_path";
  std::string scheduler = "heft";
  std::vector<DagSpec> dags;
  std::optional<std::string> output;
  std::size_t max_events = engine::kDefaultEventCap;
  std::filesystem::path base_dir;  // for relative paths; not serialized

  friend bool operator==(const Scenario& a, const Scenario& b);
};

// Throws ParseError (malformed YAML, with line) or SchemaError (unknown or
// mistyped key, missing field).
Scenario parse_scenario(const std::string& text);
// Also throws IoError.
Scenario load_scenario(const std::filesystem::path& path);

// Canonical YAML; parse_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const Scenario& scenario);

struct Overrides {
  std::optional<std::string> interference;
  std::optional<std::string> routing;
  std::optional<std::string> scheduler;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output;
};

void apply_overrides(Scenario& scenario, const Overrides& overrides);

// Scenario seed, else NCSIM_SEED, else 0.
std::uint64_t effective_seed(const Scenario& scenario);

// FNV-1a 64 over the canonical serialization.
std::uint64_t scenario_hash(const Scenario& scenario);

// Resolves capacities, expands links, derives RF bandwidths, validates.
// Throws ValidationError, SchemaError, IoError.
engine::SimulationSpec build_simulation(const Scenario& scenario);

// Deterministic draw in [lo, hi) keyed on (seed, index).
double keyed_uniform(std::uint64_t seed, std::uint64_t index, double lo, double hi);

// Loads a named table from the data directory, or a CSV path.
rf::McsTable resolve_mcs_table(const std::string& name_or_path, const std::filesystem::path& base_dir = {});

}  // namespace ncsim::io
