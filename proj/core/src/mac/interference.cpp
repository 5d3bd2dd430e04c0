#include "ncsim/mac/interference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ncsim/error.hpp"

namespace ncsim::mac {

ActiveSets active_sets(const ConflictGraph& graph, std::size_t link, const std::vector<std::size_t>& active) {
  ActiveSets sets;
  for (auto other : active) {
    if (other == link) continue;
    if (graph.conflicts(link, other)) {
      sets.contenders.push_back(other);
    } else {
      sets.hidden.push_back(other);
    }
  }
  return sets;
}

double sinr_db(const rf::RfConfig& cfg, double signal_distance_m, const std::vector<double>& interferer_distances_m) {
  double denom = rf::dbm_to_mw(cfg.noise_floor_dbm);
  for (double d : interferer_distances_m) denom += rf::dbm_to_mw(rf::received_power_dbm(cfg, d));
  return rf::mw_to_dbm(rf::dbm_to_mw(rf::received_power_dbm(cfg, signal_distance_m)) / denom);
}

double sinr_db(const Network& network, std::size_t link, const std::vector<std::size_t>& hidden,
               const rf::RfConfig& cfg) {
  const auto& rx = network.nodes()[network.link_dst(link)];
  if (!rx.position) throw MissingPosition("node " + rx.id + " has no position");
  std::vector<std::size_t> transmitters;
  transmitters.reserve(hidden.size());
  for (auto h : hidden) transmitters.push_back(network.link_src(h));
  std::sort(transmitters.begin(), transmitters.end());
  transmitters.erase(std::unique(transmitters.begin(), transmitters.end()), transmitters.end());

  std::vector<double> distances;
  distances.reserve(transmitters.size());
  for (auto t : transmitters) {
    const auto& node = network.nodes()[t];
    if (!node.position) throw MissingPosition("node " + node.id + " has no position");
    distances.push_back(distance(*node.position, *rx.position));
  }
  return sinr_db(cfg, network.link_length(link), distances);
}

HiddenMode parse_hidden_mode(const std::string& name) {
  if (name == "sinr") return HiddenMode::Sinr;
  if (name == "binary_capture") return HiddenMode::BinaryCapture;
  throw std::invalid_argument("unknown hidden mode '" + name + "'");
}

const char* to_string(HiddenMode mode) { return mode == HiddenMode::Sinr ? "sinr" : "binary_capture"; }

double hidden_factor(const Network& network, std::size_t link, const std::vector<std::size_t>& hidden,
                     const rf::RfConfig& cfg, const rf::McsTable& table, HiddenMode mode) {
  if (hidden.empty()) return 1.0;
  const double snr = rf::snr_at_distance(cfg, network.link_length(link));
  const auto base = table.select(snr);
  if (!base) return kMinFactor;
  const double sinr = sinr_db(network, link, hidden, cfg);
  if (mode == HiddenMode::BinaryCapture) {
    return sinr >= base->min_snr_db - cfg.capture_margin_db ? 1.0 : kMinFactor;
  }
  const double effective = table.rate_for(sinr);
  if (effective <= 0.0) return kMinFactor;
  return std::clamp(effective / base->rate, kMinFactor, kMaxFactor);
}

CsmaBianchi::CsmaBianchi(const Network& network, rf::RfConfig cfg, rf::McsTable table, CsmaOptions options)
    : network_(&network),
      cfg_(std::move(cfg)),
      table_(std::move(table)),
      options_(std::move(options)),
      cs_range_(rf::carrier_sense_range(cfg_)),
      graph_(build_conflict_graph(network, cs_range_, cfg_.rts_cts)),
      efficiency_(bianchi_profile(options_.mac_profile)) {}

FactorBreakdown CsmaBianchi::factor(std::size_t link, const std::vector<std::size_t>& active) {
  const ActiveSets sets = active_sets(graph_, link, active);
  FactorBreakdown out;
  out.n = 1 + sets.contenders.size();
  const int n = static_cast<int>(out.n);
  out.eta = efficiency_.eta(n);
  if (n == 1) {
    out.contention = options_.solo_mac_overhead ? out.eta : 1.0;
  } else {
    out.contention = out.eta / n;
  }
  out.f_ht = hidden_factor(*network_, link, sets.hidden, cfg_, table_, options_.hidden_mode);
  out.sinr_db = sinr_db(*network_, link, sets.hidden, cfg_);
  out.f = std::clamp(out.f_ht * out.contention, kMinFactor, kMaxFactor);
  return out;
}

std::unique_ptr<InterferenceModel> make_interference(const std::string& name, const Network& network,
                                                     const rf::RfConfig& cfg, const rf::McsTable& table,
                                                     const CsmaOptions& options) {
  if (name == "none") return std::make_unique<NoInterference>();
  if (name == "csma_bianchi") return std::make_unique<CsmaBianchi>(network, cfg, table, options);
  throw std::invalid_argument("unknown interference model '" + name + "'");
}

}  // namespace ncsim::mac
