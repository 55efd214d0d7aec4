#include "streamcut/stream_order.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>
#include <random>

#include "streamcut/error.hpp"

namespace streamcut {

std::string_view to_string(OrderKind kind) {
  switch (kind) {
    case OrderKind::Random: return "random";
    case OrderKind::BFS: return "bfs";
    case OrderKind::DFS: return "dfs";
  }
  return "?";
}

OrderKind parse_order_kind(std::string_view name) {
  if (name == "random") return OrderKind::Random;
  if (name == "bfs") return OrderKind::BFS;
  if (name == "dfs") return OrderKind::DFS;
  throw InvalidArgument("unknown stream order '" + std::string(name) + "' (random|bfs|dfs)");
}

namespace {

std::vector<VertexId> random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<VertexId> perm(n);
  std::iota(perm.begin(), perm.end(), VertexId{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

void bfs_from(const Graph& g, VertexId root, std::vector<char>& visited, std::vector<VertexId>& out) {
  std::deque<VertexId> queue{root};
  visited[root] = 1;
  while (!queue.empty()) {
    VertexId u = queue.front();
    queue.pop_front();
    out.push_back(u);
    for (VertexId v : g.neighbors(u)) {
      if (!visited[v]) {
        visited[v] = 1;
        queue.push_back(v);
      }
    }
  }
}

// Preorder of a recursive DFS, emulated with (vertex, next neighbor) frames.
void dfs_from(const Graph& g, VertexId root, std::vector<char>& visited, std::vector<VertexId>& out) {
  std::vector<std::pair<VertexId, std::size_t>> stack{{root, 0}};
  visited[root] = 1;
  out.push_back(root);
  while (!stack.empty()) {
    auto& [u, next] = stack.back();
    auto nbrs = g.neighbors(u);
    while (next < nbrs.size() && visited[nbrs[next]]) ++next;
    if (next == nbrs.size()) {
      stack.pop_back();
      continue;
    }
    VertexId v = nbrs[next++];
    visited[v] = 1;
    out.push_back(v);
    stack.emplace_back(v, 0);
  }
}

StreamPlan build(const Graph& g, OrderKind kind, std::optional<VertexId> first, std::uint64_t seed) {
  const std::size_t n = g.num_vertices();
  if (n == 0) throw EmptyGraphError("cannot build a stream over an empty graph");
  std::mt19937_64 rng(seed);
  StreamPlan plan{kind, seed, {}};
  // The first unvisited vertex of an independent uniform permutation is
  // uniform among the unvisited ones, which gives both the random start and
  // the random restarts.
  auto candidates = random_permutation(n, rng);
  if (kind == OrderKind::Random) {
    plan.sequence = std::move(candidates);
    return plan;
  }
  plan.sequence.reserve(n);
  std::vector<char> visited(n, 0);
  auto traverse = [&](VertexId root) {
    if (kind == OrderKind::BFS) bfs_from(g, root, visited, plan.sequence);
    else dfs_from(g, root, visited, plan.sequence);
  };
  if (first) {
    if (*first >= n) throw InvalidArgument("stream start vertex out of range");
    traverse(*first);
  }
  for (VertexId c : candidates) {
    if (!visited[c]) traverse(c);
  }
  return plan;
}

}  // namespace

StreamPlan make_stream(const Graph& g, OrderKind kind, std::uint64_t seed) {
  return build(g, kind, std::nullopt, seed);
}

StreamPlan make_stream_from(const Graph& g, OrderKind kind, VertexId first, std::uint64_t seed) {
  return build(g, kind, first, seed);
}

}  // namespace streamcut
