#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "streamcut/graph.hpp"
#include "streamcut/objective.hpp"
#include "streamcut/stream_order.hpp"

namespace streamcut {

// One-pass placement rules. Fennel is the greedy on delta_g; the rest are the
// usual streaming baselines (hash, balanced, neighbor/triangle greedy with
// linear or exponential load penalties, non-neighbors).
enum class Heuristic { Fennel, Hash, Balanced, DG, LDG, EDG, T, LT, ET, NN };

std::string_view to_string(Heuristic h);
Heuristic parse_heuristic(std::string_view name);
std::vector<Heuristic> all_heuristics();

// How equally scored clusters are resolved.
enum class TiePolicy {
  LowestIndex,             // first cluster with the best score
  MinLoadThenLowestIndex,  // smallest current load, then lowest index
};

std::string_view to_string(TiePolicy policy);
TiePolicy parse_tie_policy(std::string_view name);

// Mutable state of a single streaming run. Not thread-safe; many runs may
// share one Graph.
//
// Ties are resolved by the run's TiePolicy. Fennel only considers clusters
// whose load is at most nu * n / k; when none qualifies the vertex goes to the
// least loaded cluster and threshold_violations() is incremented.
class PartitionRun {
 public:
  PartitionRun(const Graph& g, std::size_t k, Heuristic heuristic, const CostModel& model,
               std::uint64_t seed, TiePolicy ties = TiePolicy::LowestIndex);

  ClusterId assign_vertex(VertexId v);
  // Puts v in c without scoring (used to set up a state).
  void place(VertexId v, ClusterId c);

  // |N(v) ∩ S_i| for every cluster, over the current state.
  std::vector<std::uint64_t> neighbor_counts(VertexId v) const;
  // Number of edges among N(v) ∩ S_i, i.e. triangles (v, w, z) with w, z in S_i.
  std::vector<std::uint64_t> triangle_counts(VertexId v) const;

  const PartitionSnapshot& snapshot() const { return state_; }
  PartitionSnapshot release() && { return std::move(state_); }
  std::uint64_t threshold_violations() const { return threshold_violations_; }
  // Adjacency entries read from the arriving vertices' own lists.
  std::uint64_t neighbor_scans() const { return neighbor_scans_; }
  // Adjacency entries read from neighbors' lists by triangle heuristics.
  std::uint64_t triangle_scans() const { return triangle_scans_; }

 private:
  void tally(VertexId v);
  void tally_triangles(VertexId v);
  double score(ClusterId c) const;
  ClusterId choose(VertexId v);

  const Graph& graph_;
  Heuristic heuristic_;
  CostModel model_;
  TiePolicy ties_;
  std::mt19937_64 rng_;
  double target_load_;  // n / k
  PartitionSnapshot state_;

  // Per-arrival scratch, reset through touched_.
  std::vector<std::uint64_t> counts_;
  std::vector<std::uint64_t> triangles_;
  std::vector<ClusterId> touched_;
  std::uint64_t assigned_neighbors_ = 0;
  std::vector<std::uint32_t> mark_;
  std::uint32_t stamp_ = 0;

  std::uint64_t threshold_violations_ = 0;
  std::uint64_t neighbor_scans_ = 0;
  mutable std::uint64_t triangle_scans_ = 0;
};

struct PartitionResult {
  PartitionSnapshot snapshot;
  double runtime_ms = 0.0;
  std::uint64_t threshold_violations = 0;
  std::uint64_t neighbor_scans = 0;
};

// Streams `plan` through a fresh run. The timer covers the assignment loop
// only. Hash draws from `seed`.
PartitionResult partition_stream(const Graph& g, const StreamPlan& plan, std::size_t k,
                                 Heuristic heuristic, const CostModel& model, std::uint64_t seed,
                                 TiePolicy ties = TiePolicy::LowestIndex);
PartitionResult partition_stream(const Graph& g, const StreamPlan& plan, std::size_t k,
                                 Heuristic heuristic, const ObjectiveConfig& config,
                                 std::uint64_t seed, TiePolicy ties = TiePolicy::LowestIndex);

}  // namespace streamcut
