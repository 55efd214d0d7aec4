#include "streamcut/partitioner.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "streamcut/error.hpp"

namespace streamcut {

std::string_view to_string(Heuristic h) {
  switch (h) {
    case Heuristic::Fennel: return "fennel";
    case Heuristic::Hash: return "hash";
    case Heuristic::Balanced: return "balanced";
    case Heuristic::DG: return "dg";
    case Heuristic::LDG: return "ldg";
    case Heuristic::EDG: return "edg";
    case Heuristic::T: return "t";
    case Heuristic::LT: return "lt";
    case Heuristic::ET: return "et";
    case Heuristic::NN: return "nn";
  }
  return "?";
}

Heuristic parse_heuristic(std::string_view name) {
  for (Heuristic h : all_heuristics()) {
    if (to_string(h) == name) return h;
  }
  if (name == "h") return Heuristic::Hash;
  if (name == "b") return Heuristic::Balanced;
  throw InvalidArgument("unknown heuristic '" + std::string(name) +
                        "' (fennel|hash|balanced|dg|ldg|edg|t|lt|et|nn)");
}

std::vector<Heuristic> all_heuristics() {
  return {Heuristic::Fennel, Heuristic::Hash, Heuristic::Balanced, Heuristic::DG, Heuristic::LDG,
          Heuristic::EDG,    Heuristic::T,    Heuristic::LT,       Heuristic::ET, Heuristic::NN};
}

std::string_view to_string(TiePolicy policy) {
  return policy == TiePolicy::LowestIndex ? "lowest-index" : "min-load";
}

TiePolicy parse_tie_policy(std::string_view name) {
  if (name == "lowest-index") return TiePolicy::LowestIndex;
  if (name == "min-load") return TiePolicy::MinLoadThenLowestIndex;
  throw InvalidArgument("unknown tie policy '" + std::string(name) + "' (lowest-index|min-load)");
}

namespace {

bool uses_triangles(Heuristic h) {
  return h == Heuristic::T || h == Heuristic::LT || h == Heuristic::ET;
}

// x * (1 - exp(load - target)); a zero count stays zero even when exp overflows.
double exp_weighted(double x, double load, double target) {
  if (x == 0.0) return 0.0;
  return x * (1.0 - std::exp(load - target));
}

}  // namespace

PartitionRun::PartitionRun(const Graph& g, std::size_t k, Heuristic heuristic, const CostModel& model,
                           std::uint64_t seed, TiePolicy ties)
    : graph_(g),
      heuristic_(heuristic),
      model_(model),
      ties_(ties),
      rng_(seed),
      target_load_(static_cast<double>(g.num_vertices()) / static_cast<double>(k == 0 ? 1 : k)),
      state_(g.num_vertices(), k),
      counts_(k, 0),
      triangles_(k, 0),
      mark_(uses_triangles(heuristic) ? g.num_vertices() : 0, 0) {}

void PartitionRun::tally(VertexId v) {
  for (ClusterId c : touched_) {
    counts_[c] = 0;
    triangles_[c] = 0;
  }
  touched_.clear();
  assigned_neighbors_ = 0;
  auto nbrs = graph_.neighbors(v);
  neighbor_scans_ += nbrs.size();
  for (VertexId u : nbrs) {
    ClusterId c = state_.cluster_of(u);
    if (c == kUnassigned) continue;
    ++assigned_neighbors_;
    if (counts_[c]++ == 0) touched_.push_back(c);
  }
}

void PartitionRun::tally_triangles(VertexId v) {
  if (++stamp_ == 0) {
    std::fill(mark_.begin(), mark_.end(), 0);
    stamp_ = 1;
  }
  auto nbrs = graph_.neighbors(v);
  for (VertexId u : nbrs) {
    if (state_.cluster_of(u) != kUnassigned) mark_[u] = stamp_;
  }
  for (VertexId u : nbrs) {
    ClusterId c = state_.cluster_of(u);
    if (c == kUnassigned) continue;
    auto second = graph_.neighbors(u);
    triangle_scans_ += second.size();
    for (VertexId w : second) {
      if (w > u && mark_[w] == stamp_ && state_.cluster_of(w) == c) ++triangles_[c];
    }
  }
}

std::vector<std::uint64_t> PartitionRun::neighbor_counts(VertexId v) const {
  std::vector<std::uint64_t> counts(state_.k(), 0);
  for (VertexId u : graph_.neighbors(v)) {
    ClusterId c = state_.cluster_of(u);
    if (c != kUnassigned) ++counts[c];
  }
  return counts;
}

std::vector<std::uint64_t> PartitionRun::triangle_counts(VertexId v) const {
  std::vector<std::uint64_t> counts(state_.k(), 0);
  auto nbrs = graph_.neighbors(v);
  for (VertexId u : nbrs) {
    ClusterId c = state_.cluster_of(u);
    if (c == kUnassigned) continue;
    for (VertexId w : graph_.neighbors(u)) {
      if (w > u && state_.cluster_of(w) == c && std::binary_search(nbrs.begin(), nbrs.end(), w)) {
        ++counts[c];
      }
    }
  }
  return counts;
}

double PartitionRun::score(ClusterId c) const {
  const double load = static_cast<double>(state_.vertex_count(c));
  const double nbrs = static_cast<double>(counts_[c]);
  const double tri = static_cast<double>(triangles_[c]);
  switch (heuristic_) {
    case Heuristic::Fennel: return delta_g(state_, c, counts_[c], model_);
    case Heuristic::Balanced: return -load;
    case Heuristic::DG: return nbrs;
    case Heuristic::LDG: return nbrs * (1.0 - load / target_load_);
    case Heuristic::EDG: return exp_weighted(nbrs, load, target_load_);
    case Heuristic::T: return tri;
    case Heuristic::LT: return tri * (1.0 - load / target_load_);
    case Heuristic::ET: return exp_weighted(tri, load, target_load_);
    case Heuristic::NN: return nbrs - load;  // maximizing this minimizes |S_i \ N(v)|
    case Heuristic::Hash: break;
  }
  return 0.0;
}

ClusterId PartitionRun::choose(VertexId v) {
  const auto k = static_cast<ClusterId>(state_.k());
  if (heuristic_ == Heuristic::Hash) {
    neighbor_scans_ += graph_.degree(v);
    return std::uniform_int_distribution<ClusterId>(0, k - 1)(rng_);
  }
  tally(v);
  if (uses_triangles(heuristic_)) tally_triangles(v);

  const bool capped = heuristic_ == Heuristic::Fennel && std::isfinite(model_.nu);
  const double cap = model_.nu * target_load_;
  ClusterId best = kUnassigned;
  double best_score = 0.0;
  for (ClusterId c = 0; c < k; ++c) {
    if (capped && static_cast<double>(state_.vertex_count(c)) > cap) continue;
    double s = score(c);
    const bool lighter_tie = ties_ == TiePolicy::MinLoadThenLowestIndex && best != kUnassigned &&
                             s == best_score && state_.vertex_count(c) < state_.vertex_count(best);
    if (best == kUnassigned || s > best_score || lighter_tie) {
      best = c;
      best_score = s;
    }
  }
  if (best == kUnassigned) {
    ++threshold_violations_;
    best = 0;
    for (ClusterId c = 1; c < k; ++c) {
      if (state_.vertex_count(c) < state_.vertex_count(best)) best = c;
    }
  }
  return best;
}

ClusterId PartitionRun::assign_vertex(VertexId v) {
  if (state_.cluster_of(v) != kUnassigned) {
    throw InvalidArgument("vertex " + std::to_string(v) + " is already assigned");
  }
  ClusterId c = choose(v);
  if (heuristic_ == Heuristic::Hash) {
    state_.assign(graph_, v, c);
  } else {
    state_.assign_counted(v, c, counts_[c], assigned_neighbors_);
  }
  return c;
}

void PartitionRun::place(VertexId v, ClusterId c) { state_.assign(graph_, v, c); }

PartitionResult partition_stream(const Graph& g, const StreamPlan& plan, std::size_t k, Heuristic heuristic,
                                 const CostModel& model, std::uint64_t seed, TiePolicy ties) {
  if (k == 0) throw InvalidArgument("k must be positive");
  if (plan.sequence.size() != g.num_vertices()) {
    throw InvalidArgument("stream covers " + std::to_string(plan.sequence.size()) + " of " +
                          std::to_string(g.num_vertices()) + " vertices");
  }
  PartitionRun run(g, k, heuristic, model, seed, ties);
  auto start = std::chrono::steady_clock::now();
  for (VertexId v : plan.sequence) run.assign_vertex(v);
  auto stop = std::chrono::steady_clock::now();

  PartitionResult result;
  result.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  result.threshold_violations = run.threshold_violations();
  result.neighbor_scans = run.neighbor_scans();
  result.snapshot = std::move(run).release();
  return result;
}

PartitionResult partition_stream(const Graph& g, const StreamPlan& plan, std::size_t k, Heuristic heuristic,
                                 const ObjectiveConfig& config, std::uint64_t seed, TiePolicy ties) {
  if (k == 0) throw InvalidArgument("k must be positive");
  return partition_stream(g, plan, k, heuristic, resolve(config, g, k), seed, ties);
}

}  // namespace streamcut
