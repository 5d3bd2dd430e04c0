#include "ncsim/mac/bianchi.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "ncsim/error.hpp"

namespace ncsim::mac {

void check(const BianchiParams& p) {
  if (p.w_min < 2) throw std::invalid_argument("w_min must be >= 2");
  if (p.max_backoff_stage < 0) throw std::invalid_argument("max_backoff_stage must be >= 0");
  if (!(p.slot_us > 0 && p.sifs_us > 0 && p.difs_us > 0 && p.prop_delay_us > 0)) {
    throw std::invalid_argument("MAC durations must be > 0");
  }
  if (!(p.payload_bits > 0 && p.channel_bitrate_bps > 0)) {
    throw std::invalid_argument("payload and bitrate must be > 0");
  }
  if (p.mac_header_bits < 0 || p.phy_header_bits < 0 || p.phy_preamble_us < 0 || p.ack_bits < 0 ||
      p.ack_bitrate_bps < 0) {
    throw std::invalid_argument("header sizes must be >= 0");
  }
}

BianchiParams bianchi_profile(const std::string& name) {
  if (name == "ofdm-default") return BianchiParams{};
  if (name == "bianchi-fhss-1997") {
    BianchiParams p;
    p.w_min = 32;
    p.max_backoff_stage = 3;
    p.slot_us = 50.0;
    p.sifs_us = 28.0;
    p.difs_us = 128.0;
    p.prop_delay_us = 1.0;
    p.payload_bits = 8184.0;
    p.mac_header_bits = 272.0;
    p.phy_header_bits = 128.0;
    p.phy_preamble_us = 0.0;
    p.ack_bits = 112.0;
    p.channel_bitrate_bps = 1e6;
    p.ack_bitrate_bps = 0.0;
    p.eifs_after_collision = false;
    return p;
  }
  throw std::invalid_argument("unknown MAC profile '" + name + "'");
}

std::vector<std::string> bianchi_profile_names() { return {"bianchi-fhss-1997", "ofdm-default"}; }

double tau_of_p(double p, int w_min, int m) {
  const double w = w_min;
  double series = 0.0;
  double term = 1.0;
  for (int i = 0; i < m; ++i) {
    series += term;
    term *= 2.0 * p;
  }
  return 2.0 / ((w + 1.0) + p * w * series);
}

namespace {

double gap(double p, const BianchiParams& params, int n) {
  const double tau = tau_of_p(p, params.w_min, params.max_backoff_stage);
  return p - (1.0 - std::pow(1.0 - tau, n - 1));
}

double us(double bits, double bps) { return bits / bps * 1e6; }

}  // namespace

FixedPoint solve_bianchi(const BianchiParams& params, int n) {
  if (n < 1) throw std::invalid_argument("station count must be >= 1");
  check(params);
  if (n == 1) return {tau_of_p(0.0, params.w_min, params.max_backoff_stage), 0.0, 0, 0.0};

  // g(0) < 0 and g(1) > 0 for n >= 2, and g is increasing in p.
  double lo = 0.0;
  double hi = 1.0;
  int iterations = 0;
  while (hi - lo > kBisectionTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (gap(mid, params, n) > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
    if (++iterations > 200) throw NoConvergence(fmt::format("bisection did not converge for n={}", n));
  }
  const double p = 0.5 * (lo + hi);
  const double residual = std::abs(gap(p, params, n));
  if (!std::isfinite(residual)) throw NoConvergence("non-finite bisection residual");
  return {tau_of_p(p, params.w_min, params.max_backoff_stage), p, iterations, residual};
}

BianchiSolution saturation_throughput(const BianchiParams& params, int n) {
  const FixedPoint fp = solve_bianchi(params, n);
  const double ack_rate = params.ack_bitrate_bps > 0 ? params.ack_bitrate_bps : params.channel_bitrate_bps;

  const double header = params.phy_preamble_us + us(params.phy_header_bits + params.mac_header_bits,
                                                    params.channel_bitrate_bps);
  const double payload = us(params.payload_bits, params.channel_bitrate_bps);
  const double ack =
      params.phy_preamble_us + us(params.phy_header_bits, params.channel_bitrate_bps) + us(params.ack_bits, ack_rate);
  const double delta = params.prop_delay_us;

  BianchiSolution s;
  s.tau = fp.tau;
  s.p = fp.p;
  s.iterations = fp.iterations;
  s.residual = fp.residual;
  s.t_success_us = header + payload + params.sifs_us + delta + ack + params.difs_us + delta;
  s.t_collision_us = header + payload + params.difs_us + delta;
  if (params.eifs_after_collision) s.t_collision_us += params.sifs_us + ack;

  s.p_tr = 1.0 - std::pow(1.0 - fp.tau, n);
  s.p_success = n * fp.tau * std::pow(1.0 - fp.tau, n - 1) / s.p_tr;
  s.expected_slot_us = (1.0 - s.p_tr) * params.slot_us + s.p_tr * s.p_success * s.t_success_us +
                       s.p_tr * (1.0 - s.p_success) * s.t_collision_us;
  s.s = s.p_success * s.p_tr * payload / s.expected_slot_us;
  s.eta = s.p_success * s.p_tr * s.t_success_us / s.expected_slot_us;
  return s;
}

double EfficiencyTable::eta(int n) {
  const auto it = memo_.find(n);
  if (it != memo_.end()) return it->second;
  const double value = saturation_throughput(params_, n).eta;
  memo_.emplace(n, value);
  return value;
}

double EfficiencyTable::contention_factor(int n) {
  if (n <= 1) return 1.0;
  return eta(n) / n;
}

}  // namespace ncsim::mac
