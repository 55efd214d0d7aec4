#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "streamcut/graph.hpp"
#include "streamcut/objective.hpp"

namespace streamcut {

// Fraction of edges cut, |cut| / m. Zero for an edgeless graph.
double compute_lambda(const Graph& g, const PartitionSnapshot& snapshot);
// Normalized maximum load, max_i |S_i| * k / n.
double compute_rho(const PartitionSnapshot& snapshot, std::size_t n, std::size_t k);

struct RunResult {
  std::string graph;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t k = 0;
  double gamma = 0.0;
  double alpha = 0.0;
  double nu = 0.0;
  std::string order;
  std::string heuristic;
  std::uint64_t seed = 0;
  double lambda = 0.0;
  double rho = 0.0;
  double f_value = 0.0;
  double g_value = 0.0;
  double runtime_ms = 0.0;
  std::uint64_t threshold_violations = 0;
};

// Fills the quality fields (lambda, rho, f, g) from a complete snapshot.
void score_partition(const Graph& g, const PartitionSnapshot& snapshot, const CostModel& model,
                     RunResult& result);

struct Summary {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for fewer than 2 values
  std::size_t count = 0;
};

Summary summarize(std::span<const double> values);

}  // namespace streamcut
