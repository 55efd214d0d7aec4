#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "streamcut/graph.hpp"

namespace streamcut {

using ClusterId = std::uint32_t;

// What c(.) is charged on: |S_i| or e(S_i, S_i).
enum class SizeMode { VertexCardinality, InteriorEdgeCardinality };
// How the greedy index prices one more vertex: c(x+1) - c(x) or c'(x).
enum class MarginalMode { DiscreteDifference, Derivative };

std::string_view to_string(SizeMode mode);
std::string_view to_string(MarginalMode mode);
SizeMode parse_size_mode(std::string_view name);
MarginalMode parse_marginal_mode(std::string_view name);

struct ObjectiveConfig {
  double gamma = 1.5;
  std::optional<double> alpha;  // nullopt: resolved from the graph (see resolve_alpha)
  double nu = std::numeric_limits<double>::infinity();
  SizeMode size_mode = SizeMode::VertexCardinality;
  MarginalMode marginal_mode = MarginalMode::Derivative;

  void validate() const;
};

// alpha = m k^(gamma-1) / n^gamma. An edgeless graph is priced as if m = 1 so
// that alpha stays positive.
double resolve_alpha(const Graph& g, std::size_t k, double gamma);

// c(x) = alpha x^gamma with every parameter fixed.
struct CostModel {
  double alpha = 1.0;
  double gamma = 1.5;
  double nu = std::numeric_limits<double>::infinity();
  SizeMode size_mode = SizeMode::VertexCardinality;
  MarginalMode marginal_mode = MarginalMode::Derivative;

  double cost(double x) const;
  double marginal_cost(double x) const;
};

// Resolves alpha for `k` clusters. In interior-edge mode the automatic rule
// uses m in place of n, i.e. alpha = k^(gamma-1) / m^(gamma-1).
CostModel resolve(const ObjectiveConfig& config, const Graph& g, std::size_t k);

inline constexpr ClusterId kUnassigned = std::numeric_limits<ClusterId>::max();

// Assignment of vertices to k clusters with exact incremental counters.
class PartitionSnapshot {
 public:
  PartitionSnapshot() = default;
  PartitionSnapshot(std::size_t num_vertices, std::size_t k);

  static PartitionSnapshot from_assignment(const Graph& g, std::size_t k,
                                           std::span<const ClusterId> assignment);

  // Places an unassigned vertex, scanning its neighbors to update counters.
  void assign(const Graph& g, VertexId v, ClusterId c);
  // Same, with the neighbor tallies already known: `neighbors_in_cluster` of
  // v's `assigned_neighbors` already-assigned neighbors lie in cluster c.
  void assign_counted(VertexId v, ClusterId c, std::uint64_t neighbors_in_cluster,
                      std::uint64_t assigned_neighbors);

  std::size_t k() const { return vertex_counts_.size(); }
  std::size_t num_vertices() const { return assignment_.size(); }
  std::size_t assigned_count() const { return assigned_; }
  bool fully_assigned() const { return assigned_ == assignment_.size(); }

  ClusterId cluster_of(VertexId v) const { return assignment_[v]; }
  std::span<const ClusterId> assignment() const { return assignment_; }
  std::uint64_t vertex_count(ClusterId c) const { return vertex_counts_[c]; }
  std::uint64_t internal_edges(ClusterId c) const { return internal_edges_[c]; }
  std::span<const std::uint64_t> vertex_counts() const { return vertex_counts_; }
  std::span<const std::uint64_t> internal_edge_counts() const { return internal_edges_; }
  std::uint64_t cut_edges() const { return cut_edges_; }
  std::uint64_t total_internal_edges() const;

 private:
  std::vector<ClusterId> assignment_;
  std::vector<std::uint64_t> vertex_counts_;
  std::vector<std::uint64_t> internal_edges_;
  std::uint64_t cut_edges_ = 0;
  std::size_t assigned_ = 0;
};

// Gain in g from adding v to `cluster`, given how many of v's assigned
// neighbors already sit there.
double delta_g(const PartitionSnapshot& snapshot, ClusterId cluster,
               std::uint64_t neighbors_in_cluster, const CostModel& model);

// Sum over clusters of c(sigma(S_i)).
double size_cost(const PartitionSnapshot& snapshot, const CostModel& model);

// f = |cut| + sum c(sigma(S_i)), minimized.
double eval_f(const PartitionSnapshot& snapshot, const CostModel& model);
// g = sum [e(S_i,S_i) - c(sigma(S_i))] = m - f, maximized.
double eval_g(const PartitionSnapshot& snapshot, const CostModel& model);
// g + c(sigma(V)); nonnegative for every partition since c is superadditive.
// sigma(V) is n in vertex mode and `num_edges` in interior-edge mode.
double eval_g_shifted(const PartitionSnapshot& snapshot, const CostModel& model,
                      std::uint64_t num_edges);
// sum [e(S_i,S_i) - p * C(|S_i|, 2)].
double eval_modularity_form(const PartitionSnapshot& snapshot, double p);

}  // namespace streamcut
