#pragma once

#include <vector>

#include "ncsim/error.hpp"
#include "ncsim/model.hpp"

namespace ncsim {

struct ValidationOptions {
  bool require_positions = false;  // set when links are derived from RF physics
};

struct ValidatedModel {
  Network network;
  std::vector<DagSpec> dags;
};

// Collects every violation before throwing, so a scenario author sees all
// problems at once. Throws ValidationError when the list is non-empty.
ValidatedModel validate_scenario(std::vector<NodeSpec> nodes, std::vector<LinkSpec> links,
                                 std::vector<DagSpec> dags, const ValidationOptions& options = {});

// Same checks, returned instead of thrown.
std::vector<Violation> find_violations(const std::vector<NodeSpec>& nodes,
                                       const std::vector<LinkSpec>& links,
                                       const std::vector<DagSpec>& dags,
                                       const ValidationOptions& options = {});

// Expands undirected links into both directions with identical parameters.
std::vector<LinkSpec> expand_undirected(const std::vector<LinkSpec>& undirected);

}  // namespace ncsim
