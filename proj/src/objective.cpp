#include "streamcut/objective.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "streamcut/error.hpp"

namespace streamcut {

std::string_view to_string(SizeMode mode) {
  return mode == SizeMode::VertexCardinality ? "vertex" : "interior-edge";
}

std::string_view to_string(MarginalMode mode) {
  return mode == MarginalMode::Derivative ? "derivative" : "discrete";
}

SizeMode parse_size_mode(std::string_view name) {
  if (name == "vertex") return SizeMode::VertexCardinality;
  if (name == "interior-edge" || name == "edge") return SizeMode::InteriorEdgeCardinality;
  throw InvalidArgument("unknown size mode '" + std::string(name) + "' (vertex|interior-edge)");
}

MarginalMode parse_marginal_mode(std::string_view name) {
  if (name == "derivative") return MarginalMode::Derivative;
  if (name == "discrete") return MarginalMode::DiscreteDifference;
  throw InvalidArgument("unknown marginal mode '" + std::string(name) + "' (derivative|discrete)");
}

void ObjectiveConfig::validate() const {
  if (!(gamma >= 1.0) || !std::isfinite(gamma)) throw InvalidArgument("gamma must be a finite value >= 1");
  if (alpha && !(*alpha > 0.0 && std::isfinite(*alpha))) throw InvalidArgument("alpha must be positive");
  if (!(nu >= 1.0)) throw InvalidArgument("nu must be >= 1");
}

double resolve_alpha(const Graph& g, std::size_t k, double gamma) {
  if (g.num_vertices() == 0) throw EmptyGraphError("alpha is undefined for a graph with no vertices");
  if (k == 0) throw InvalidArgument("k must be positive");
  double m = static_cast<double>(std::max<std::size_t>(g.num_edges(), 1));
  double n = static_cast<double>(g.num_vertices());
  return m * std::pow(static_cast<double>(k), gamma - 1.0) / std::pow(n, gamma);
}

double CostModel::cost(double x) const { return alpha * std::pow(x, gamma); }

double CostModel::marginal_cost(double x) const {
  if (marginal_mode == MarginalMode::Derivative) return alpha * gamma * std::pow(x, gamma - 1.0);
  return alpha * (std::pow(x + 1.0, gamma) - std::pow(x, gamma));
}

CostModel resolve(const ObjectiveConfig& config, const Graph& g, std::size_t k) {
  config.validate();
  CostModel model{1.0, config.gamma, config.nu, config.size_mode, config.marginal_mode};
  if (config.alpha) {
    model.alpha = *config.alpha;
  } else if (config.size_mode == SizeMode::VertexCardinality) {
    model.alpha = resolve_alpha(g, k, config.gamma);
  } else {
    if (k == 0) throw InvalidArgument("k must be positive");
    double m = static_cast<double>(std::max<std::size_t>(g.num_edges(), 1));
    model.alpha = std::pow(static_cast<double>(k) / m, config.gamma - 1.0);
  }
  return model;
}

PartitionSnapshot::PartitionSnapshot(std::size_t num_vertices, std::size_t k)
    : assignment_(num_vertices, kUnassigned), vertex_counts_(k, 0), internal_edges_(k, 0) {
  if (k == 0) throw InvalidArgument("k must be positive");
}

PartitionSnapshot PartitionSnapshot::from_assignment(const Graph& g, std::size_t k,
                                                     std::span<const ClusterId> assignment) {
  if (assignment.size() != g.num_vertices()) {
    throw InvalidArgument("assignment length does not match vertex count");
  }
  PartitionSnapshot s(g.num_vertices(), k);
  for (VertexId v = 0; v < assignment.size(); ++v) {
    if (assignment[v] == kUnassigned) continue;
    s.assign(g, v, assignment[v]);
  }
  return s;
}

void PartitionSnapshot::assign(const Graph& g, VertexId v, ClusterId c) {
  std::uint64_t in_cluster = 0, assigned = 0;
  for (VertexId u : g.neighbors(v)) {
    ClusterId cu = assignment_[u];
    if (cu == kUnassigned) continue;
    ++assigned;
    if (cu == c) ++in_cluster;
  }
  assign_counted(v, c, in_cluster, assigned);
}

void PartitionSnapshot::assign_counted(VertexId v, ClusterId c, std::uint64_t neighbors_in_cluster,
                                       std::uint64_t assigned_neighbors) {
  if (v >= assignment_.size()) throw InvalidArgument("vertex out of range");
  if (c >= k()) throw InvalidArgument("cluster id " + std::to_string(c) + " out of range");
  if (assignment_[v] != kUnassigned) throw InvalidArgument("vertex " + std::to_string(v) + " already assigned");
  assignment_[v] = c;
  ++vertex_counts_[c];
  internal_edges_[c] += neighbors_in_cluster;
  cut_edges_ += assigned_neighbors - neighbors_in_cluster;
  ++assigned_;
}

std::uint64_t PartitionSnapshot::total_internal_edges() const {
  return std::accumulate(internal_edges_.begin(), internal_edges_.end(), std::uint64_t{0});
}

double delta_g(const PartitionSnapshot& snapshot, ClusterId cluster, std::uint64_t neighbors_in_cluster,
               const CostModel& model) {
  const double gained = static_cast<double>(neighbors_in_cluster);
  if (model.size_mode == SizeMode::VertexCardinality) {
    return gained - model.marginal_cost(static_cast<double>(snapshot.vertex_count(cluster)));
  }
  const double interior = static_cast<double>(snapshot.internal_edges(cluster));
  return gained - (model.cost(interior + gained) - model.cost(interior));
}

namespace {

void require_full(const PartitionSnapshot& s) {
  if (!s.fully_assigned()) {
    throw InvalidArgument(std::to_string(s.num_vertices() - s.assigned_count()) +
                          " vertices are unassigned");
  }
}

}  // namespace

double size_cost(const PartitionSnapshot& snapshot, const CostModel& model) {
  auto sizes = model.size_mode == SizeMode::VertexCardinality ? snapshot.vertex_counts()
                                                               : snapshot.internal_edge_counts();
  double total = 0.0;
  for (auto s : sizes) total += model.cost(static_cast<double>(s));
  return total;
}

double eval_f(const PartitionSnapshot& snapshot, const CostModel& model) {
  require_full(snapshot);
  return static_cast<double>(snapshot.cut_edges()) + size_cost(snapshot, model);
}

double eval_g(const PartitionSnapshot& snapshot, const CostModel& model) {
  require_full(snapshot);
  return static_cast<double>(snapshot.total_internal_edges()) - size_cost(snapshot, model);
}

double eval_g_shifted(const PartitionSnapshot& snapshot, const CostModel& model, std::uint64_t num_edges) {
  require_full(snapshot);
  auto sizes = model.size_mode == SizeMode::VertexCardinality ? snapshot.vertex_counts()
                                                               : snapshot.internal_edge_counts();
  double whole = model.size_mode == SizeMode::VertexCardinality
                     ? static_cast<double>(snapshot.num_vertices())
                     : static_cast<double>(num_edges);
  // alpha (whole^gamma - sum s^gamma) rather than g + c(whole): the bracket is
  // exactly zero when the pieces add up to the whole under gamma = 1 or a
  // single occupied cluster.
  double parts = 0.0;
  for (auto s : sizes) parts += std::pow(static_cast<double>(s), model.gamma);
  return static_cast<double>(snapshot.total_internal_edges()) +
         model.alpha * (std::pow(whole, model.gamma) - parts);
}

double eval_modularity_form(const PartitionSnapshot& snapshot, double p) {
  require_full(snapshot);
  double total = 0.0;
  for (ClusterId c = 0; c < snapshot.k(); ++c) {
    double s = static_cast<double>(snapshot.vertex_count(c));
    total += static_cast<double>(snapshot.internal_edges(c)) - p * s * (s - 1.0) / 2.0;
  }
  return total;
}

}  // namespace streamcut
