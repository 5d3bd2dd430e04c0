#pragma once

#include <vector>

#include "ncsim/mac/bianchi.hpp"
#include "ncsim/model.hpp"
#include "ncsim/rf/mcs_table.hpp"
#include "ncsim/rf/phy.hpp"

// Closed-form predictions for the validation ladder. Nothing here touches the
// engine, the conflict graph or the interference model classes.
namespace ncsim::experiments::analytic {

struct Context {
  rf::RfConfig rf;
  rf::McsTable mcs = rf::McsTable::default_11ax();
  mac::BianchiParams mac;
};

double snr_db(const Context& ctx, double distance_m);
double link_rate(const Context& ctx, double distance_m);
double cs_range(const Context& ctx);
double eta(const Context& ctx, int n);

// Saturated per-link rate for n mutually contending links of equal base rate.
double nway_rate(const Context& ctx, double base_rate, int n);

struct PlanarLink {
  Position tx;
  Position rx;
};

struct PhasePrediction {
  std::vector<double> finish;        // seconds from the common start
  std::vector<double> average_rate;  // data / finish
  std::size_t phases = 0;
};

// All links start together with `data_mb` each. Rates are piecewise constant
// and re-evaluated whenever a link finishes.
PhasePrediction predict_simultaneous(const Context& ctx, const std::vector<PlanarLink>& links, double data_mb);

std::vector<PlanarLink> parallel_links(std::size_t count, double separation, double length = 30.0);

}  // namespace ncsim::experiments::analytic
