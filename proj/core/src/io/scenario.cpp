#include "ncsim/io/scenario.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "ncsim/error.hpp"
#include "ncsim/mac/bianchi.hpp"
#include "ncsim/routing/routing.hpp"
#include "ncsim/validate.hpp"

#ifndef NCSIM_DATA_DIR
#define NCSIM_DATA_DIR ""
#endif

namespace ncsim::io {

bool operator==(const Scenario& a, const Scenario& b) {
  return a.seed == b.seed && a.capacity_range == b.capacity_range && a.nodes == b.nodes && a.links == b.links &&
         a.auto_link == b.auto_link && a.rf == b.rf && a.interference == b.interference &&
         a.interference_options == b.interference_options && a.routing == b.routing && a.scheduler == b.scheduler &&
         a.dags == b.dags && a.output == b.output && a.max_events == b.max_events;
}

namespace {

std::string at(const YAML::Node& node) {
  const auto m = node.Mark();
  return m.is_null() ? std::string() : fmt::format(" (line {})", m.line + 1);
}

void allow_keys(const YAML::Node& map, const std::string& path, std::initializer_list<std::string_view> keys) {
  if (!map.IsMap()) throw SchemaError(path, "expected a mapping" + at(map));
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    bool known = false;
    for (auto k : keys) known = known || k == key;
    if (!known) throw SchemaError(path.empty() ? key : path + "." + key, "unknown key" + at(kv.first));
  }
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

template <typename T>
T scalar(const YAML::Node& node, const std::string& path, const char* what) {
  if (!node.IsScalar()) throw SchemaError(path, std::string("expected ") + what + at(node));
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw SchemaError(path, std::string("expected ") + what + at(node));
  }
}

double number(const YAML::Node& node, const std::string& path) { return scalar<double>(node, path, "a number"); }
std::string text(const YAML::Node& node, const std::string& path) {
  return scalar<std::string>(node, path, "a string");
}
bool flag(const YAML::Node& node, const std::string& path) { return scalar<bool>(node, path, "a boolean"); }

template <typename T, typename F>
std::optional<T> optional_field(const YAML::Node& map, const char* key, const std::string& path, F read) {
  const auto node = map[key];
  if (!node || node.IsNull()) return std::nullopt;
  return read(node, join(path, key));
}

template <typename T, typename F>
T required_field(const YAML::Node& map, const char* key, const std::string& path, F read) {
  const auto node = map[key];
  if (!node || node.IsNull()) throw SchemaError(join(path, key), "required field missing" + at(map));
  return read(node, join(path, key));
}

YAML::Node sequence(const YAML::Node& node, const std::string& path) {
  if (!node.IsSequence()) throw SchemaError(path, "expected a list" + at(node));
  return node;
}

Position parse_position(const YAML::Node& node, const std::string& path) {
  if (node.IsSequence()) {
    if (node.size() != 2) throw SchemaError(path, "position needs two coordinates" + at(node));
    return {number(node[0], path + "[0]"), number(node[1], path + "[1]")};
  }
  allow_keys(node, path, {"x", "y"});
  return {required_field<double>(node, "x", path, number), required_field<double>(node, "y", path, number)};
}

void check_name(const std::string& value, const std::string& path, std::initializer_list<std::string_view> names) {
  for (auto n : names) {
    if (n == value) return;
  }
  std::string list;
  for (auto n : names) list += (list.empty() ? "" : ", ") + std::string(n);
  throw SchemaError(path, "'" + value + "' is not one of " + list);
}

void parse_rf(const YAML::Node& node, RfSection& rf) {
  const std::string p = "rf";
  allow_keys(node, p,
             {"enabled", "tx_power_dbm", "frequency_hz", "path_loss_exponent", "reference_distance_m",
              "noise_floor_dbm", "cca_threshold_dbm", "capture_margin_db", "channel_width_mhz", "standard", "rts_cts",
              "link_latency_s", "mcs_table"});
  auto& c = rf.config;
  rf.enabled = optional_field<bool>(node, "enabled", p, flag).value_or(true);
  c.tx_power_dbm = optional_field<double>(node, "tx_power_dbm", p, number).value_or(c.tx_power_dbm);
  c.frequency_hz = optional_field<double>(node, "frequency_hz", p, number).value_or(c.frequency_hz);
  c.path_loss_exponent = optional_field<double>(node, "path_loss_exponent", p, number).value_or(c.path_loss_exponent);
  c.reference_distance_m =
      optional_field<double>(node, "reference_distance_m", p, number).value_or(c.reference_distance_m);
  c.noise_floor_dbm = optional_field<double>(node, "noise_floor_dbm", p, number).value_or(c.noise_floor_dbm);
  c.cca_threshold_dbm = optional_field<double>(node, "cca_threshold_dbm", p, number).value_or(c.cca_threshold_dbm);
  c.capture_margin_db = optional_field<double>(node, "capture_margin_db", p, number).value_or(c.capture_margin_db);
  c.channel_width_mhz = optional_field<double>(node, "channel_width_mhz", p, number).value_or(c.channel_width_mhz);
  c.standard = optional_field<std::string>(node, "standard", p, text).value_or(c.standard);
  c.rts_cts = optional_field<bool>(node, "rts_cts", p, flag).value_or(c.rts_cts);
  c.link_latency_s = optional_field<double>(node, "link_latency_s", p, number).value_or(c.link_latency_s);
  rf.mcs_table = optional_field<std::string>(node, "mcs_table", p, text).value_or(rf.mcs_table);
  try {
    rf::check(c);
  } catch (const std::invalid_argument& e) {
    throw SchemaError("rf", e.what());
  }
}

DagSpec parse_dag(const YAML::Node& node, const std::string& p) {
  allow_keys(node, p, {"id", "inject_at", "tasks", "edges"});
  DagSpec dag;
  dag.id = required_field<std::string>(node, "id", p, text);
  dag.inject_at = optional_field<double>(node, "inject_at", p, number).value_or(0.0);
  const auto tasks = sequence(required_field<YAML::Node>(node, "tasks", p, [](auto n, const auto&) { return n; }),
                              join(p, "tasks"));
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const auto tp = fmt::format("{}.tasks[{}]", p, i);
    allow_keys(tasks[i], tp, {"id", "compute_cost", "pinned_to"});
    TaskSpec t;
    t.id = required_field<std::string>(tasks[i], "id", tp, text);
    t.compute_cost = required_field<double>(tasks[i], "compute_cost", tp, number);
    t.pinned_to = optional_field<std::string>(tasks[i], "pinned_to", tp, text);
    dag.tasks.push_back(std::move(t));
  }
  if (const auto edges = node["edges"]; edges && !edges.IsNull()) {
    sequence(edges, join(p, "edges"));
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const auto ep = fmt::format("{}.edges[{}]", p, i);
      allow_keys(edges[i], ep, {"src", "dst", "data_size"});
      DagEdge e;
      e.src_task = required_field<std::string>(edges[i], "src", ep, text);
      e.dst_task = required_field<std::string>(edges[i], "dst", ep, text);
      e.data_size = optional_field<double>(edges[i], "data_size", ep, number).value_or(0.0);
      dag.edges.push_back(std::move(e));
    }
  }
  return dag;
}

Scenario parse_root(const YAML::Node& root) {
  if (!root.IsMap()) throw SchemaError("", "scenario must be a mapping");
  allow_keys(root, "",
             {"seed", "capacity_range", "nodes", "links", "auto_link", "rf", "interference", "interference_options",
              "routing", "scheduler", "dags", "output", "max_events"});
  Scenario s;
  s.seed = optional_field<std::uint64_t>(root, "seed", "", [](auto n, const auto& p) {
    return scalar<std::uint64_t>(n, p, "a non-negative integer");
  });
  if (const auto cr = root["capacity_range"]; cr && !cr.IsNull()) {
    if (!cr.IsSequence() || cr.size() != 2) throw SchemaError("capacity_range", "expected [lo, hi]" + at(cr));
    const double lo = number(cr[0], "capacity_range[0]");
    const double hi = number(cr[1], "capacity_range[1]");
    if (!(lo > 0.0 && hi >= lo)) throw SchemaError("capacity_range", "need 0 < lo <= hi");
    s.capacity_range = std::make_pair(lo, hi);
  }

  if (const auto rf = root["rf"]; rf && !rf.IsNull()) parse_rf(rf, s.rf);

  const auto nodes = sequence(required_field<YAML::Node>(root, "nodes", "", [](auto n, const auto&) { return n; }), "nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto p = fmt::format("nodes[{}]", i);
    allow_keys(nodes[i], p, {"id", "capacity", "position"});
    NodeEntry n;
    n.id = required_field<std::string>(nodes[i], "id", p, text);
    n.capacity = optional_field<double>(nodes[i], "capacity", p, number);
    n.position = optional_field<Position>(nodes[i], "position", p, parse_position);
    if (s.rf.enabled && !n.position) throw SchemaError(join(p, "position"), "required when rf is enabled" + at(nodes[i]));
    if (!n.capacity && !s.capacity_range) {
      throw SchemaError(join(p, "capacity"), "required unless capacity_range is set" + at(nodes[i]));
    }
    s.nodes.push_back(std::move(n));
  }

  if (const auto links = root["links"]; links && !links.IsNull()) {
    sequence(links, "links");
    for (std::size_t i = 0; i < links.size(); ++i) {
      const auto p = fmt::format("links[{}]", i);
      allow_keys(links[i], p, {"src", "dst", "bandwidth", "latency", "directed"});
      LinkEntry l;
      l.src = required_field<std::string>(links[i], "src", p, text);
      l.dst = required_field<std::string>(links[i], "dst", p, text);
      l.bandwidth = optional_field<double>(links[i], "bandwidth", p, number);
      l.latency = optional_field<double>(links[i], "latency", p, number);
      l.directed = optional_field<bool>(links[i], "directed", p, flag).value_or(false);
      if (s.rf.enabled && l.bandwidth) {
        throw SchemaError(join(p, "bandwidth"), "derived from rf; must be absent" + at(links[i]));
      }
      if (!s.rf.enabled && !l.bandwidth) {
        throw SchemaError(join(p, "bandwidth"), "required when rf is disabled" + at(links[i]));
      }
      s.links.push_back(std::move(l));
    }
  }

  if (const auto al = root["auto_link"]; al && !al.IsNull()) {
    allow_keys(al, "auto_link", {"max_distance_m", "bandwidth", "latency"});
    AutoLink a;
    a.max_distance_m = optional_field<double>(al, "max_distance_m", "auto_link", number).value_or(a.max_distance_m);
    a.bandwidth = optional_field<double>(al, "bandwidth", "auto_link", number);
    a.latency = optional_field<double>(al, "latency", "auto_link", number);
    if (s.rf.enabled && a.bandwidth) throw SchemaError("auto_link.bandwidth", "derived from rf; must be absent");
    if (!s.rf.enabled && !a.bandwidth) throw SchemaError("auto_link.bandwidth", "required when rf is disabled");
    for (std::size_t i = 0; i < s.nodes.size(); ++i) {
      if (!s.nodes[i].position) throw SchemaError(fmt::format("nodes[{}].position", i), "required by auto_link");
    }
    s.auto_link = a;
  }

  s.interference = optional_field<std::string>(root, "interference", "", text).value_or(s.interference);
  check_name(s.interference, "interference", {"none", "csma_bianchi"});
  if (s.interference == "csma_bianchi") {
    for (std::size_t i = 0; i < s.nodes.size(); ++i) {
      if (!s.nodes[i].position) {
        throw SchemaError(fmt::format("nodes[{}].position", i), "required by csma_bianchi interference");
      }
    }
  }
  if (const auto io = root["interference_options"]; io && !io.IsNull()) {
    const std::string p = "interference_options";
    allow_keys(io, p, {"hidden_mode", "solo_mac_overhead", "mac_profile"});
    auto& o = s.interference_options;
    const auto mode = optional_field<std::string>(io, "hidden_mode", p, text);
    if (mode) {
      check_name(*mode, join(p, "hidden_mode"), {"sinr", "binary_capture"});
      o.hidden_mode = mac::parse_hidden_mode(*mode);
    }
    o.solo_mac_overhead = optional_field<bool>(io, "solo_mac_overhead", p, flag).value_or(false);
    o.mac_profile = optional_field<std::string>(io, "mac_profile", p, text).value_or(o.mac_profile);
    check_name(o.mac_profile, join(p, "mac_profile"), {"ofdm-default", "bianchi-fhss-1997"});
  }
  s.routing = optional_field<std::string>(root, "routing", "", text).value_or(s.routing);
  check_name(s.routing, "routing", {"direct", "widest_path", "shortest_path"});
  s.scheduler = optional_field<std::string>(root, "scheduler", "", text).value_or(s.scheduler);
  check_name(s.scheduler, "scheduler", {"manual", "round_robin", "heft", "cpop"});

  if (const auto dags = root["dags"]; dags && !dags.IsNull()) {
    sequence(dags, "dags");
    for (std::size_t i = 0; i < dags.size(); ++i) s.dags.push_back(parse_dag(dags[i], fmt::format("dags[{}]", i)));
  }
  s.output = optional_field<std::string>(root, "output", "", text);
  s.max_events = optional_field<std::size_t>(root, "max_events", "", [](auto n, const auto& p) {
                   return scalar<std::size_t>(n, p, "a non-negative integer");
                 }).value_or(s.max_events);
  return s;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ParseError(e.msg, e.mark.is_null() ? 0 : e.mark.line + 1, e.mark.is_null() ? 0 : e.mark.column + 1);
  }
  return parse_root(root);
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  Scenario s = parse_scenario(ss.str());
  s.base_dir = path.parent_path();
  return s;
}

std::string serialize_scenario(const Scenario& s) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  if (s.seed) out << YAML::Key << "seed" << YAML::Value << *s.seed;
  if (s.capacity_range) {
    out << YAML::Key << "capacity_range" << YAML::Value << YAML::Flow << YAML::BeginSeq << s.capacity_range->first
        << s.capacity_range->second << YAML::EndSeq;
  }
  out << YAML::Key << "rf" << YAML::Value << YAML::BeginMap;
  const auto& c = s.rf.config;
  out << YAML::Key << "enabled" << YAML::Value << s.rf.enabled;
  out << YAML::Key << "tx_power_dbm" << YAML::Value << c.tx_power_dbm;
  out << YAML::Key << "frequency_hz" << YAML::Value << c.frequency_hz;
  out << YAML::Key << "path_loss_exponent" << YAML::Value << c.path_loss_exponent;
  out << YAML::Key << "reference_distance_m" << YAML::Value << c.reference_distance_m;
  out << YAML::Key << "noise_floor_dbm" << YAML::Value << c.noise_floor_dbm;
  out << YAML::Key << "cca_threshold_dbm" << YAML::Value << c.cca_threshold_dbm;
  out << YAML::Key << "capture_margin_db" << YAML::Value << c.capture_margin_db;
  out << YAML::Key << "channel_width_mhz" << YAML::Value << c.channel_width_mhz;
  out << YAML::Key << "standard" << YAML::Value << c.standard;
  out << YAML::Key << "rts_cts" << YAML::Value << c.rts_cts;
  out << YAML::Key << "link_latency_s" << YAML::Value << c.link_latency_s;
  out << YAML::Key << "mcs_table" << YAML::Value << s.rf.mcs_table;
  out << YAML::EndMap;

  out << YAML::Key << "nodes" << YAML::Value << YAML::BeginSeq;
  for (const auto& n : s.nodes) {
    out << YAML::Flow << YAML::BeginMap << YAML::Key << "id" << YAML::Value << n.id;
    if (n.capacity) out << YAML::Key << "capacity" << YAML::Value << *n.capacity;
    if (n.position) {
      out << YAML::Key << "position" << YAML::Value << YAML::Flow << YAML::BeginSeq << n.position->x
          << n.position->y << YAML::EndSeq;
    }
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;

  if (!s.links.empty()) {
    out << YAML::Key << "links" << YAML::Value << YAML::BeginSeq;
    for (const auto& l : s.links) {
      out << YAML::Flow << YAML::BeginMap << YAML::Key << "src" << YAML::Value << l.src << YAML::Key << "dst"
          << YAML::Value << l.dst;
      if (l.bandwidth) out << YAML::Key << "bandwidth" << YAML::Value << *l.bandwidth;
      if (l.latency) out << YAML::Key << "latency" << YAML::Value << *l.latency;
      out << YAML::Key << "directed" << YAML::Value << l.directed << YAML::EndMap;
    }
    out << YAML::EndSeq;
  }
  if (s.auto_link) {
    out << YAML::Key << "auto_link" << YAML::Value << YAML::Flow << YAML::BeginMap << YAML::Key << "max_distance_m"
        << YAML::Value << s.auto_link->max_distance_m;
    if (s.auto_link->bandwidth) out << YAML::Key << "bandwidth" << YAML::Value << *s.auto_link->bandwidth;
    if (s.auto_link->latency) out << YAML::Key << "latency" << YAML::Value << *s.auto_link->latency;
    out << YAML::EndMap;
  }

  out << YAML::Key << "interference" << YAML::Value << s.interference;
  out << YAML::Key << "interference_options" << YAML::Value << YAML::Flow << YAML::BeginMap;
  out << YAML::Key << "hidden_mode" << YAML::Value << mac::to_string(s.interference_options.hidden_mode);
  out << YAML::Key << "solo_mac_overhead" << YAML::Value << s.interference_options.solo_mac_overhead;
  out << YAML::Key << "mac_profile" << YAML::Value << s.interference_options.mac_profile;
  out << YAML::EndMap;
  out << YAML::Key << "routing" << YAML::Value << s.routing;
  out << YAML::Key << "scheduler" << YAML::Value << s.scheduler;

  out << YAML::Key << "dags" << YAML::Value << YAML::BeginSeq;
  for (const auto& d : s.dags) {
    out << YAML::BeginMap;
    out << YAML::Key << "id" << YAML::Value << d.id;
    out << YAML::Key << "inject_at" << YAML::Value << d.inject_at;
    out << YAML::Key << "tasks" << YAML::Value << YAML::BeginSeq;
    for (const auto& t : d.tasks) {
      out << YAML::Flow << YAML::BeginMap << YAML::Key << "id" << YAML::Value << t.id << YAML::Key << "compute_cost"
          << YAML::Value << t.compute_cost;
      if (t.pinned_to) out << YAML::Key << "pinned_to" << YAML::Value << *t.pinned_to;
      out << YAML::EndMap;
    }
    out << YAML::EndSeq;
    out << YAML::Key << "edges" << YAML::Value << YAML::BeginSeq;
    for (const auto& e : d.edges) {
      out << YAML::Flow << YAML::BeginMap << YAML::Key << "src" << YAML::Value << e.src_task << YAML::Key << "dst"
          << YAML::Value << e.dst_task << YAML::Key << "data_size" << YAML::Value << e.data_size << YAML::EndMap;
    }
    out << YAML::EndSeq;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  if (s.output) out << YAML::Key << "output" << YAML::Value << *s.output;
  out << YAML::Key << "max_events" << YAML::Value << s.max_events;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

void apply_overrides(Scenario& s, const Overrides& o) {
  if (o.interference) {
    check_name(*o.interference, "interference", {"none", "csma_bianchi"});
    s.interference = *o.interference;
  }
  if (o.routing) {
    check_name(*o.routing, "routing", {"direct", "widest_path", "shortest_path"});
    s.routing = *o.routing;
  }
  if (o.scheduler) {
    check_name(*o.scheduler, "scheduler", {"manual", "round_robin", "heft", "cpop"});
    s.scheduler = *o.scheduler;
  }
  if (o.seed) s.seed = *o.seed;
  if (o.output) s.output = *o.output;
}

std::uint64_t effective_seed(const Scenario& s) {
  if (s.seed) return *s.seed;
  if (const char* env = std::getenv("NCSIM_SEED"); env && *env) {
    try {
      return std::stoull(env);
    } catch (const std::logic_error&) {
      throw SchemaError("NCSIM_SEED", "not an unsigned integer");
    }
  }
  return 0;
}

std::uint64_t scenario_hash(const Scenario& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize_scenario(s)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

double keyed_uniform(std::uint64_t seed, std::uint64_t index, double lo, double hi) {
  const std::uint64_t x = splitmix64(seed ^ splitmix64(index));
  const double u = static_cast<double>(x >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

rf::McsTable resolve_mcs_table(const std::string& name, const std::filesystem::path& base_dir) {
  namespace fs = std::filesystem;
  if (name == "11ax_20mhz") return rf::McsTable::default_11ax();
  std::vector<fs::path> candidates;
  if (!base_dir.empty()) candidates.push_back(base_dir / name);
  candidates.emplace_back(name);
  const std::string file = name.ends_with(".csv") ? name : name + ".csv";
  if (const char* env = std::getenv("NCSIM_DATA_DIR"); env && *env) candidates.push_back(fs::path(env) / "mcs" / file);
  if (*NCSIM_DATA_DIR) candidates.push_back(fs::path(NCSIM_DATA_DIR) / "mcs" / file);
  for (const auto& c : candidates) {
    std::error_code ec;
    if (fs::is_regular_file(c, ec)) return rf::McsTable::load_csv(c);
  }
  throw IoError("MCS table '" + name + "' not found");
}

engine::SimulationSpec build_simulation(const Scenario& s) {
  const std::uint64_t seed = effective_seed(s);
  std::vector<NodeSpec> nodes;
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    const auto& n = s.nodes[i];
    double cap = 0.0;
    if (n.capacity) {
      cap = *n.capacity;
    } else if (s.capacity_range) {
      cap = keyed_uniform(seed, i, s.capacity_range->first, s.capacity_range->second);
    } else {
      throw SchemaError(fmt::format("nodes[{}].capacity", i), "required unless capacity_range is set");
    }
    nodes.push_back({n.id, cap, n.position});
  }

  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) index.emplace(nodes[i].id, i);
  const auto& cfg = s.rf.config;
  const rf::McsTable table = s.rf.enabled || s.interference == "csma_bianchi"
                                 ? resolve_mcs_table(s.rf.mcs_table, s.base_dir)
                                 : rf::McsTable::default_11ax();

  auto rf_bandwidth = [&](const std::string& a, const std::string& b) {
    const auto ia = index.find(a);
    const auto ib = index.find(b);
    if (ia == index.end() || ib == index.end()) return 0.0;
    const auto& pa = nodes[ia->second].position;
    const auto& pb = nodes[ib->second].position;
    if (!pa || !pb) return 0.0;
    const double d = distance(*pa, *pb);
    if (!(d > 0.0)) return 0.0;  // flagged by validation as a shared position
    return table.rate_for(rf::snr_at_distance(cfg, d));
  };

  std::vector<LinkSpec> links;
  std::set<std::pair<std::string, std::string>> present;
  auto add = [&](LinkSpec l) {
    present.emplace(l.src, l.dst);
    links.push_back(std::move(l));
  };
  for (const auto& l : s.links) {
    const double bw = s.rf.enabled ? rf_bandwidth(l.src, l.dst) : l.bandwidth.value_or(0.0);
    const double lat = l.latency.value_or(s.rf.enabled ? cfg.link_latency_s : 0.0);
    add({l.src, l.dst, bw, lat});
    if (!l.directed) {
      add({l.dst, l.src, s.rf.enabled ? rf_bandwidth(l.dst, l.src) : bw, lat});
    }
  }
  if (s.auto_link) {
    const double lat = s.auto_link->latency.value_or(s.rf.enabled ? cfg.link_latency_s : 0.0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (std::size_t j = i + 1; j < nodes.size(); ++j) {
        if (distance(*nodes[i].position, *nodes[j].position) > s.auto_link->max_distance_m) continue;
        for (auto [a, b] : {std::pair{i, j}, std::pair{j, i}}) {
          if (present.count({nodes[a].id, nodes[b].id})) continue;
          const double bw = s.rf.enabled ? rf_bandwidth(nodes[a].id, nodes[b].id) : *s.auto_link->bandwidth;
          add({nodes[a].id, nodes[b].id, bw, lat});
        }
      }
    }
  }

  ValidationOptions opts;
  opts.require_positions = s.rf.enabled || s.interference == "csma_bianchi";
  auto model = validate_scenario(std::move(nodes), std::move(links), s.dags, opts);

  engine::SimulationSpec spec;
  spec.network = std::move(model.network);
  spec.dags = std::move(model.dags);
  spec.interference = s.interference;
  spec.csma = s.interference_options;
  spec.rf = cfg;
  spec.mcs = table;
  spec.routing = routing::parse_routing(s.routing);
  spec.scheduler = s.scheduler;
  spec.seed = seed;
  spec.max_events = s.max_events;
  return spec;
}

}  // namespace ncsim::io
