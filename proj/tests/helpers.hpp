#pragma once

#include <initializer_list>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "streamcut/graph.hpp"

namespace testing {

inline streamcut::Graph make_graph(std::size_t n, std::initializer_list<streamcut::Edge> edges) {
  std::vector<streamcut::Edge> list(edges);
  return streamcut::Graph::from_edges(n, list);
}

inline streamcut::Graph parse(const std::string& text, bool lcc = false) {
  std::istringstream in(text);
  return streamcut::parse_edge_list(in, "test", {.largest_component = lcc});
}

inline streamcut::Graph triangle() { return make_graph(3, {{0, 1}, {1, 2}, {0, 2}}); }
inline streamcut::Graph four_cycle() { return make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}); }
inline streamcut::Graph k4() { return make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }

// G(n, p) with every vertex kept, even isolated ones.
inline streamcut::Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<streamcut::Edge> edges;
  for (streamcut::VertexId u = 0; u < n; ++u) {
    for (streamcut::VertexId v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.emplace_back(u, v);
    }
  }
  return streamcut::Graph::from_edges(n, edges);
}

// Graph on n vertices whose edges are the set bits of `mask` over the
// pairs (0,1), (0,2), ..., (n-2,n-1).
inline streamcut::Graph graph_from_mask(std::size_t n, std::uint64_t mask) {
  std::vector<streamcut::Edge> edges;
  std::size_t bit = 0;
  for (streamcut::VertexId u = 0; u < n; ++u) {
    for (streamcut::VertexId v = u + 1; v < n; ++v, ++bit) {
      if (mask >> bit & 1) edges.emplace_back(u, v);
    }
  }
  return streamcut::Graph::from_edges(n, edges);
}

}  // namespace testing
