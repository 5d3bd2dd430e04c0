#pragma once

#include <string>

namespace ncsim::rf {

inline constexpr double kSpeedOfLight = 299792458.0;

struct RfConfig {
  double tx_power_dbm = 20.0;
  double frequency_hz = 5.0e9;
  double path_loss_exponent = 3.0;
  double reference_distance_m = 1.0;
  double noise_floor_dbm = -95.0;
  double cca_threshold_dbm = -82.0;
  double capture_margin_db = 5.0;
  double channel_width_mhz = 20.0;
  std::string standard = "11ax";
  bool rts_cts = false;
  double link_latency_s = 0.0;  // latency assigned to RF-derived links

  friend bool operator==(const RfConfig&, const RfConfig&) = default;
};

// Throws std::invalid_argument on out-of-range fields.
void check(const RfConfig& cfg);

// Friis free-space loss at distance d0, in dB.
double reference_loss_db(double frequency_hz, double d0);
double reference_loss_db(const RfConfig& cfg);

// Log-distance path loss. Throws NonPositiveDistance for d <= 0.
double path_loss_db(const RfConfig& cfg, double d);
double received_power_dbm(const RfConfig& cfg, double d);
double snr_at_distance(const RfConfig& cfg, double d);

// Distance at which received power falls to the CCA threshold.
double carrier_sense_range(const RfConfig& cfg);

double dbm_to_mw(double dbm);
double mw_to_dbm(double mw);

}  // namespace ncsim::rf
