#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace streamcut {

using VertexId = std::uint32_t;
// Vertex label as it appeared in the input file (SNAP ids are sparse).
using Label = std::uint64_t;
using Edge = std::pair<VertexId, VertexId>;

// Immutable simple undirected graph in CSR form. Neighbor lists are sorted,
// contain no self loops and no duplicates, and adjacency is symmetric.
class Graph {
 public:
  Graph() = default;

  // Builds a graph over dense indices [0, n). Edges may be given in either or
  // both directions; self loops and duplicates are dropped. `labels`, when
  // non-empty, must hold n distinct original labels (index -> label).
  static Graph from_edges(std::size_t n, std::span<const Edge> edges,
                          std::vector<Label> labels = {});

  std::size_t num_vertices() const { return labels_.size(); }
  std::size_t num_edges() const { return adjacency_.size() / 2; }
  bool empty() const { return labels_.empty(); }

  std::size_t degree(VertexId v) const;
  std::span<const VertexId> neighbors(VertexId v) const;
  bool has_edge(VertexId u, VertexId v) const;

  Label label(VertexId v) const;
  std::span<const Label> labels() const { return labels_; }
  std::optional<VertexId> index_of(Label label) const;

  // Each undirected edge once, as (u, v) with u < v, in lexicographic order.
  std::vector<Edge> edge_list() const;

  // Subgraph induced by `vertices` (any order, no duplicates). Dense indices
  // follow ascending order of the selected indices; original labels carry over.
  Graph induced_subgraph(std::span<const VertexId> vertices) const;

 private:
  void check_vertex(VertexId v) const;

  std::vector<std::size_t> offsets_{0};
  std::vector<VertexId> adjacency_;
  std::vector<Label> labels_;
  // (label, index) sorted by label.
  std::vector<std::pair<Label, VertexId>> label_lookup_;
};

struct LoadOptions {
  // Restrict to the largest connected component after cleanup.
  bool largest_component = true;
};

// Reads whitespace separated "u v" pairs. Lines starting with '#' and blank
// lines are skipped; columns after the second (weights, signs) are ignored.
// Labels are remapped densely in ascending label order.
Graph load_edge_list(const std::filesystem::path& path, LoadOptions options = {});
Graph parse_edge_list(std::istream& in, const std::string& source_name,
                      LoadOptions options = {});

// Writes "u v" lines using original labels. Isolated vertices are not
// representable in this format and are lost on reload.
void write_edge_list(const Graph& g, std::ostream& out);

// Component id per vertex; ids are dense and numbered by smallest member.
std::vector<std::uint32_t> connected_components(const Graph& g);
Graph largest_connected_component(const Graph& g);

}  // namespace streamcut
