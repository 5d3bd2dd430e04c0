#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace ncsim::mac {

// Basic-access DCF parameters. Durations in microseconds, sizes in bits.
struct BianchiParams {
  int w_min = 16;
  int max_backoff_stage = 6;
  double slot_us = 9.0;
  double sifs_us = 16.0;
  double difs_us = 34.0;
  double prop_delay_us = 1.0;
  double payload_bits = 8096.0;
  double mac_header_bits = 288.0;
  double phy_header_bits = 0.0;   // sent at channel_bitrate_bps
  double phy_preamble_us = 40.0;  // fixed-duration preamble ahead of every frame
  double ack_bits = 112.0;
  double channel_bitrate_bps = 24e6;
  double ack_bitrate_bps = 6e6;  // 0 means channel_bitrate_bps
  bool eifs_after_collision = true;

  friend bool operator==(const BianchiParams&, const BianchiParams&) = default;
};

// Throws std::invalid_argument.
void check(const BianchiParams& params);

// Names: "ofdm-default", "bianchi-fhss-1997". Throws std::invalid_argument.
BianchiParams bianchi_profile(const std::string& name);
std::vector<std::string> bianchi_profile_names();

struct FixedPoint {
  double tau = 0.0;
  double p = 0.0;
  int iterations = 0;
  double residual = 0.0;  // |p - (1 - (1 - tau)^(n-1))|
};

struct BianchiSolution {
  double tau = 0.0;
  double p = 0.0;
  double p_tr = 0.0;
  double p_success = 0.0;
  double t_success_us = 0.0;
  double t_collision_us = 0.0;
  double expected_slot_us = 0.0;
  double s = 0.0;    // payload share of channel time
  double eta = 0.0;  // successful-airtime share of channel time
  int iterations = 0;
  double residual = 0.0;
};

inline constexpr double kBisectionTolerance = 1e-12;

// Transmission probability for a given conditional collision probability.
double tau_of_p(double p, int w_min, int m);

// Bisection on p in [0, 1]. Throws NoConvergence, std::invalid_argument for n < 1.
FixedPoint solve_bianchi(const BianchiParams& params, int n);
BianchiSolution saturation_throughput(const BianchiParams& params, int n);

// Memoized eta(n) for one parameter set. Not synchronized; keep one per engine.
class EfficiencyTable {
 public:
  explicit EfficiencyTable(BianchiParams params = {}) : params_(params) {}

  const BianchiParams& params() const { return params_; }
  double eta(int n);
  // 1 for n == 1, eta(n)/n otherwise.
  double contention_factor(int n);

 private:
  BianchiParams params_;
  std::map<int, double> memo_;
};

}  // namespace ncsim::mac
