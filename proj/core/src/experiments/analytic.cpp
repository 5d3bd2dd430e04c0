#include "ncsim/experiments/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace ncsim::experiments::analytic {

namespace {

double rx_dbm(const Context& ctx, double d) {
  const auto& c = ctx.rf;
  const double friis = 20.0 * std::log10(4.0 * std::numbers::pi * c.reference_distance_m * c.frequency_hz /
                                         rf::kSpeedOfLight);
  return c.tx_power_dbm - friis - 10.0 * c.path_loss_exponent * std::log10(d / c.reference_distance_m);
}

double lin(double dbm) { return std::pow(10.0, dbm / 10.0); }

double rate_at(const Context& ctx, double snr) {
  const auto e = ctx.mcs.select(snr);
  return e ? e->rate : 0.0;
}

bool conflicting(const PlanarLink& a, const PlanarLink& b, double cs) {
  return distance(a.tx, b.tx) <= cs || distance(a.tx, b.rx) <= cs || distance(b.tx, a.rx) <= cs;
}

}  // namespace

double snr_db(const Context& ctx, double distance_m) { return rx_dbm(ctx, distance_m) - ctx.rf.noise_floor_dbm; }

double link_rate(const Context& ctx, double distance_m) { return rate_at(ctx, snr_db(ctx, distance_m)); }

double cs_range(const Context& ctx) {
  const auto& c = ctx.rf;
  const double friis = 20.0 * std::log10(4.0 * std::numbers::pi * c.reference_distance_m * c.frequency_hz /
                                         rf::kSpeedOfLight);
  return c.reference_distance_m *
         std::pow(10.0, (c.tx_power_dbm - c.cca_threshold_dbm - friis) / (10.0 * c.path_loss_exponent));
}

double eta(const Context& ctx, int n) { return mac::saturation_throughput(ctx.mac, n).eta; }

double nway_rate(const Context& ctx, double base_rate, int n) {
  if (n <= 1) return base_rate;
  return base_rate * eta(ctx, n) / n;
}

PhasePrediction predict_simultaneous(const Context& ctx, const std::vector<PlanarLink>& links, double data_mb) {
  const std::size_t k = links.size();
  const double cs = cs_range(ctx);
  PhasePrediction out;
  out.finish.assign(k, -1.0);
  out.average_rate.assign(k, 0.0);
  std::vector<double> remaining(k, data_mb);
  std::vector<bool> active(k, data_mb > 0.0);
  double now = 0.0;

  while (std::find(active.begin(), active.end(), true) != active.end()) {
    std::vector<double> rate(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
      if (!active[i]) continue;
      const double d = distance(links[i].tx, links[i].rx);
      const double base = link_rate(ctx, d);
      int contenders = 1;
      double interference_mw = 0.0;
      for (std::size_t j = 0; j < k; ++j) {
        if (j == i || !active[j]) continue;
        if (conflicting(links[i], links[j], cs)) {
          ++contenders;
        } else {
          interference_mw += lin(rx_dbm(ctx, distance(links[j].tx, links[i].rx)));
        }
      }
      const double sinr = rx_dbm(ctx, d) - 10.0 * std::log10(lin(ctx.rf.noise_floor_dbm) + interference_mw);
      const double f_ht = base > 0.0 ? std::max(0.01, rate_at(ctx, sinr) / base) : 0.0;
      const double share = contenders == 1 ? 1.0 : eta(ctx, contenders) / contenders;
      rate[i] = base * std::clamp(f_ht * share, 0.01, 1.0);
    }

    double dt = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < k; ++i) {
      if (active[i] && rate[i] > 0.0) dt = std::min(dt, remaining[i] / rate[i]);
    }
    if (!std::isfinite(dt)) break;  // only zero-rate links left
    now += dt;
    ++out.phases;
    for (std::size_t i = 0; i < k; ++i) {
      if (!active[i]) continue;
      remaining[i] -= rate[i] * dt;
      if (remaining[i] <= 1e-9 * data_mb) {
        active[i] = false;
        out.finish[i] = now;
        out.average_rate[i] = data_mb / now;
      }
    }
  }
  return out;
}

std::vector<PlanarLink> parallel_links(std::size_t count, double separation, double length) {
  std::vector<PlanarLink> out;
  for (std::size_t i = 0; i < count; ++i) {
    const double y = static_cast<double>(i) * separation;
    out.push_back({{0.0, y}, {length, y}});
  }
  return out;
}

}  // namespace ncsim::experiments::analytic
