#include "ncsim/experiments/dag_templates.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

namespace ncsim::experiments {

namespace {

DagSpec with_tasks(const std::string& id, std::size_t n, double cost) {
  DagSpec dag;
  dag.id = id;
  for (std::size_t i = 0; i < n; ++i) dag.tasks.push_back({fmt::format("T{}", i), cost, std::nullopt});
  return dag;
}

void edge(DagSpec& dag, std::size_t a, std::size_t b, double data) {
  dag.edges.push_back({fmt::format("T{}", a), fmt::format("T{}", b), data});
}

}  // namespace

DagSpec fork_join_dag(const std::string& id, double cost, double data) {
  auto dag = with_tasks(id, 5, cost);
  for (std::size_t i = 1; i <= 3; ++i) edge(dag, 0, i, data);
  for (std::size_t i = 1; i <= 3; ++i) edge(dag, i, 4, data);
  return dag;
}

DagSpec diamond_dag(const std::string& id, double cost, double data) {
  auto dag = with_tasks(id, 10, cost);
  for (std::size_t i = 1; i <= 4; ++i) edge(dag, 0, i, data);
  const std::size_t cross[4][2] = {{5, 6}, {6, 7}, {7, 8}, {8, 5}};
  for (std::size_t i = 0; i < 4; ++i) {
    edge(dag, i + 1, cross[i][0], data);
    edge(dag, i + 1, cross[i][1], data);
  }
  for (std::size_t i = 5; i <= 8; ++i) edge(dag, i, 9, data);
  return dag;
}

std::vector<std::size_t> pipeline_layers(std::size_t tasks) {
  if (tasks == 0) return {};
  std::vector<std::size_t> widths{1};
  std::size_t left = tasks - 1;
  if (left > 0) {
    widths.push_back(std::min<std::size_t>(4, left));
    left -= widths.back();
  }
  while (left > 0) {
    widths.push_back(std::min<std::size_t>(6, left));
    left -= widths.back();
  }
  return widths;
}

DagSpec pipeline_dag(std::size_t tasks, const std::string& id, double cost, double data) {
  auto dag = with_tasks(id.empty() ? fmt::format("pipeline_{}", tasks) : id, tasks, cost);
  const auto widths = pipeline_layers(tasks);
  std::size_t first = 0;
  for (std::size_t layer = 0; layer + 1 < widths.size(); ++layer) {
    const std::size_t w = widths[layer];
    const std::size_t next_first = first + w;
    const std::size_t next_w = widths[layer + 1];
    std::vector<bool> fed(next_w, false);
    for (std::size_t j = 0; j < w; ++j) {
      std::set<std::size_t> targets{j % next_w, (j + 1) % next_w};
      for (auto t : targets) {
        edge(dag, first + j, next_first + t, data);
        fed[t] = true;
      }
    }
    // A wider next layer would otherwise leave tasks with no producer.
    for (std::size_t k = 0; k < next_w; ++k) {
      if (!fed[k]) edge(dag, first + k % w, next_first + k, data);
    }
    first = next_first;
  }
  return dag;
}

DagSpec chain_dag(std::size_t tasks, const std::string& id, double cost, double data) {
  auto dag = with_tasks(id, tasks, cost);
  for (std::size_t i = 0; i + 1 < tasks; ++i) edge(dag, i, i + 1, data);
  return dag;
}

std::vector<DagSpec> factorial_templates(double data) {
  return {fork_join_dag("fork_join_5", kTemplateCost, data), diamond_dag("diamond_10", kTemplateCost, data),
          pipeline_dag(20, "pipeline_20", kTemplateCost, data)};
}

DagSpec with_data_size(DagSpec dag, double data) {
  for (auto& e : dag.edges) e.data_size = data;
  return dag;
}

DagSpec renamed(DagSpec dag, const std::string& id, double inject_at) {
  dag.id = id;
  dag.inject_at = inject_at;
  return dag;
}

}  // namespace ncsim::experiments
