#pragma once

#include <string>
#include <vector>

#include "ncsim/model.hpp"

namespace ncsim::experiments {

inline constexpr double kTemplateCost = 500.0;
inline constexpr double kTemplateData = 10.0;  // MB

// T0 -> {T1, T2, T3} -> T4.
DagSpec fork_join_dag(const std::string& id = "fork_join_5", double cost = kTemplateCost,
                      double data = kTemplateData);

// T0 -> {T1..T4}, cross-links T1->{T5,T6}, T2->{T6,T7}, T3->{T7,T8},
// T4->{T8,T5}, {T5..T8} -> T9.
DagSpec diamond_dag(const std::string& id = "diamond_10", double cost = kTemplateCost, double data = kTemplateData);

// Layer widths 1, 4, then 6 until the last layer takes the remainder. Task j
// of a layer feeds tasks j and j+1 (mod width) of the next one; a next-layer
// task left without a producer is fed by task k mod width.
DagSpec pipeline_dag(std::size_t tasks, const std::string& id = {}, double cost = kTemplateCost,
                     double data = kTemplateData);

std::vector<std::size_t> pipeline_layers(std::size_t tasks);

// T0 -> T1 -> ... -> T{n-1}.
DagSpec chain_dag(std::size_t tasks, const std::string& id = "chain", double cost = kTemplateCost,
                  double data = kTemplateData);

// The three factorial templates: fork_join_5, diamond_10, pipeline_20.
std::vector<DagSpec> factorial_templates(double data = kTemplateData);

DagSpec with_data_size(DagSpec dag, double data);
DagSpec renamed(DagSpec dag, const std::string& id, double inject_at);

}  // namespace ncsim::experiments
