#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "streamcut/graph.hpp"
#include "streamcut/objective.hpp"

namespace streamcut {

struct OracleResult {
  std::vector<ClusterId> best_assignment;
  double best_f = 0.0;
  double best_g = 0.0;
  double best_g_shifted = 0.0;
  std::uint64_t partitions_enumerated = 0;
};

// Largest k^n the oracle accepts.
inline constexpr double kOracleLimit = 1e8;

// Exhaustive search over labeled assignments (vertex 0 pinned to cluster 0,
// empty clusters allowed) for a partition maximizing g, i.e. minimizing f.
// Throws InstanceTooLarge when k^n exceeds kOracleLimit.
OracleResult brute_force_optimal(const Graph& g, std::size_t k, const CostModel& model);

// Calls `visit` with every assignment of n vertices to k clusters, in
// lexicographic order. With `pin_first`, vertex 0 stays in cluster 0.
void for_each_assignment(std::size_t n, std::size_t k, bool pin_first,
                         const std::function<void(std::span<const ClusterId>)>& visit);

}  // namespace streamcut
