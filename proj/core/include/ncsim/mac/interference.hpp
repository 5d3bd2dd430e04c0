#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ncsim/mac/bianchi.hpp"
#include "ncsim/mac/conflict_graph.hpp"
#include "ncsim/model.hpp"
#include "ncsim/rf/mcs_table.hpp"
#include "ncsim/rf/phy.hpp"

namespace ncsim::mac {

inline constexpr double kMinFactor = 0.01;
inline constexpr double kMaxFactor = 1.0;

struct ActiveSets {
  std::vector<std::size_t> contenders;
  std::vector<std::size_t> hidden;
};

// `active` must be sorted. The link itself is excluded from both sets.
ActiveSets active_sets(const ConflictGraph& graph, std::size_t link, const std::vector<std::size_t>& active);

struct FactorBreakdown {
  double f = 1.0;
  double f_ht = 1.0;
  double contention = 1.0;
  double eta = 1.0;
  std::size_t n = 1;
  double sinr_db = 0.0;
};

// Interference-free SINR in dB from distances alone.
double sinr_db(const rf::RfConfig& cfg, double signal_distance_m, const std::vector<double>& interferer_distances_m);

// SINR at the receiver of `link` with the transmitters of `hidden` active.
// Transmitters shared by several hidden links count once.
double sinr_db(const Network& network, std::size_t link, const std::vector<std::size_t>& hidden,
               const rf::RfConfig& cfg);

enum class HiddenMode {
  Sinr,           // re-select the MCS from SINR
  BinaryCapture,  // full rate if SINR clears the base threshold minus the capture margin
};

HiddenMode parse_hidden_mode(const std::string& name);
const char* to_string(HiddenMode mode);

// Ratio of SINR-selected rate to SNR-selected rate, in [0.01, 1].
double hidden_factor(const Network& network, std::size_t link, const std::vector<std::size_t>& hidden,
                     const rf::RfConfig& cfg, const rf::McsTable& table, HiddenMode mode = HiddenMode::Sinr);

class InterferenceModel {
 public:
  virtual ~InterferenceModel() = default;

  virtual std::string name() const = 0;
  // True when one link's activity can change another link's factor.
  virtual bool couples_links() const = 0;
  // `active` is the sorted set of links carrying at least one flow.
  virtual FactorBreakdown factor(std::size_t link, const std::vector<std::size_t>& active) = 0;
};

class NoInterference final : public InterferenceModel {
 public:
  std::string name() const override { return "none"; }
  bool couples_links() const override { return false; }
  FactorBreakdown factor(std::size_t, const std::vector<std::size_t>&) override { return {}; }
};

struct CsmaOptions {
  HiddenMode hidden_mode = HiddenMode::Sinr;
  bool solo_mac_overhead = false;
  std::string mac_profile = "ofdm-default";

  friend bool operator==(const CsmaOptions&, const CsmaOptions&) = default;
};

// CSMA/CA contention share times the hidden-terminal factor. Requires every
// node to have a position.
class CsmaBianchi final : public InterferenceModel {
 public:
  CsmaBianchi(const Network& network, rf::RfConfig cfg, rf::McsTable table, CsmaOptions options = {});

  std::string name() const override { return "csma_bianchi"; }
  bool couples_links() const override { return true; }
  FactorBreakdown factor(std::size_t link, const std::vector<std::size_t>& active) override;

  const ConflictGraph& graph() const { return graph_; }
  double cs_range() const { return cs_range_; }

 private:
  const Network* network_;
  rf::RfConfig cfg_;
  rf::McsTable table_;
  CsmaOptions options_;
  double cs_range_;
  ConflictGraph graph_;
  EfficiencyTable efficiency_;
};

std::unique_ptr<InterferenceModel> make_interference(const std::string& name, const Network& network,
                                                     const rf::RfConfig& cfg, const rf::McsTable& table,
                                                     const CsmaOptions& options = {});

}  // namespace ncsim::mac
