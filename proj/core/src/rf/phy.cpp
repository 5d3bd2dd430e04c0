#include "ncsim/rf/phy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "ncsim/error.hpp"

namespace ncsim::rf {

void check(const RfConfig& cfg) {
  if (!(cfg.path_loss_exponent >= 2.0)) throw std::invalid_argument("path_loss_exponent must be >= 2");
  if (!(cfg.reference_distance_m > 0.0)) throw std::invalid_argument("reference_distance_m must be > 0");
  if (!(cfg.capture_margin_db >= 0.0)) throw std::invalid_argument("capture_margin_db must be >= 0");
  if (!(cfg.frequency_hz > 0.0)) throw std::invalid_argument("frequency_hz must be > 0");
  if (!(cfg.link_latency_s >= 0.0)) throw std::invalid_argument("link_latency_s must be >= 0");
}

double reference_loss_db(double frequency_hz, double d0) {
  return 20.0 * std::log10(4.0 * std::numbers::pi * d0 * frequency_hz / kSpeedOfLight);
}

double reference_loss_db(const RfConfig& cfg) { return reference_loss_db(cfg.frequency_hz, cfg.reference_distance_m); }

double path_loss_db(const RfConfig& cfg, double d) {
  if (!(d > 0.0)) throw NonPositiveDistance(fmt::format("distance must be positive, got {}", d));
  return reference_loss_db(cfg) + 10.0 * cfg.path_loss_exponent * std::log10(d / cfg.reference_distance_m);
}

double received_power_dbm(const RfConfig& cfg, double d) { return cfg.tx_power_dbm - path_loss_db(cfg, d); }

double snr_at_distance(const RfConfig& cfg, double d) { return received_power_dbm(cfg, d) - cfg.noise_floor_dbm; }

double carrier_sense_range(const RfConfig& cfg) {
  const double budget = cfg.tx_power_dbm - cfg.cca_threshold_dbm - reference_loss_db(cfg);
  return cfg.reference_distance_m * std::pow(10.0, budget / (10.0 * cfg.path_loss_exponent));
}

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

}  // namespace ncsim::rf
