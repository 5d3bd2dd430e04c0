#pragma once

#include <vector>

#include "ncsim/experiments/result.hpp"

namespace ncsim::experiments {

std::vector<double> distance_grid();             // 1, 12, 30, 50, 75, 105, 140 m
std::vector<double> two_link_separations();      // 5..200 m
std::vector<double> three_link_separations();    // 10, 35, 40, 50, 70, 75, 100, 150 m

// Single link per distance: engine flow rate vs the MCS rate at the link SNR.
// An unusable link deadlocks the run and is reported as rate 0.
ExperimentResult exp_distance_sweep(const std::vector<double>& distances = distance_grid());

// 2 or 3 parallel 30 m links, 10 MB each, all starting together. Average
// rates vs the phase-decomposed prediction. Series are "A", "B" and "C".
ExperimentResult exp_parallel_separation(std::size_t links, std::vector<double> separations = {});

// n parallel 30 m links 5 m apart, n = 1..max_n. Also compares eta(n) with
// the reference column for n = 2..8 at a 0.02 tolerance.
ExperimentResult exp_nway_contention(int max_n = 8);

// FHSS reference values for (W=32, m=3, n=2,3), solver residual and
// iteration count, and the shape of S(n) for (32,5) and (128,3).
ExperimentResult bianchi_reproduction();

}  // namespace ncsim::experiments
