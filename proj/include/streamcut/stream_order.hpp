#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "streamcut/graph.hpp"

namespace streamcut {

enum class OrderKind { Random, BFS, DFS };

std::string_view to_string(OrderKind kind);
OrderKind parse_order_kind(std::string_view name);

// Vertex arrival sequence of one streaming run.
struct StreamPlan {
  OrderKind kind = OrderKind::Random;
  std::uint64_t seed = 0;
  std::vector<VertexId> sequence;
};

// Random: uniform permutation. BFS/DFS: traversal from a uniformly random
// vertex, neighbors in ascending index order, restarting from a uniformly
// random unvisited vertex when a component is exhausted.
StreamPlan make_stream(const Graph& g, OrderKind kind, std::uint64_t seed);

// BFS/DFS with a fixed first vertex. Restarts (if any) are still drawn from
// `seed`. Random ignores `first`.
StreamPlan make_stream_from(const Graph& g, OrderKind kind, VertexId first, std::uint64_t seed);

}  // namespace streamcut
