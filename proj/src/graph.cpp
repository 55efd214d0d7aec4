#include "streamcut/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <stdexcept>

#include "streamcut/error.hpp"

namespace streamcut {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges, std::vector<Label> labels) {
  if (n > std::numeric_limits<VertexId>::max()) {
    throw InvalidArgument("vertex count exceeds 32-bit index range");
  }
  if (labels.empty()) {
    labels.resize(n);
    std::iota(labels.begin(), labels.end(), Label{0});
  } else if (labels.size() != n) {
    throw InvalidArgument("label vector size does not match vertex count");
  }

  Graph g;
  std::vector<std::size_t> counts(n + 1, 0);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw InvalidArgument("edge endpoint out of range");
    if (u == v) continue;
    ++counts[u + 1];
    ++counts[v + 1];
  }
  std::partial_sum(counts.begin(), counts.end(), counts.begin());

  std::vector<VertexId> adjacency(counts.back());
  std::vector<std::size_t> cursor(counts.begin(), counts.end() - 1);
  for (auto [u, v] : edges) {
    if (u == v) continue;
    adjacency[cursor[u]++] = v;
    adjacency[cursor[v]++] = u;
  }

  // Sort and dedup each list, compacting in place.
  g.offsets_.assign(n + 1, 0);
  std::size_t write = 0;
  for (std::size_t v = 0; v < n; ++v) {
    auto first = adjacency.begin() + static_cast<std::ptrdiff_t>(counts[v]);
    auto last = adjacency.begin() + static_cast<std::ptrdiff_t>(counts[v + 1]);
    std::sort(first, last);
    last = std::unique(first, last);
    for (auto it = first; it != last; ++it) adjacency[write++] = *it;
    g.offsets_[v + 1] = write;
  }
  adjacency.resize(write);
  adjacency.shrink_to_fit();
  g.adjacency_ = std::move(adjacency);

  g.label_lookup_.reserve(n);
  for (std::size_t v = 0; v < n; ++v) g.label_lookup_.emplace_back(labels[v], static_cast<VertexId>(v));
  std::sort(g.label_lookup_.begin(), g.label_lookup_.end());
  for (std::size_t i = 1; i < g.label_lookup_.size(); ++i) {
    if (g.label_lookup_[i].first == g.label_lookup_[i - 1].first) {
      throw InvalidArgument("duplicate vertex label " + std::to_string(g.label_lookup_[i].first));
    }
  }
  g.labels_ = std::move(labels);
  return g;
}

void Graph::check_vertex(VertexId v) const {
  if (v >= num_vertices()) {
    throw std::out_of_range("vertex " + std::to_string(v) + " out of range [0, " +
                            std::to_string(num_vertices()) + ")");
  }
}

std::size_t Graph::degree(VertexId v) const {
  check_vertex(v);
  return offsets_[v + 1] - offsets_[v];
}

std::span<const VertexId> Graph::neighbors(VertexId v) const {
  check_vertex(v);
  return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

bool Graph::has_edge(VertexId u, VertexId v) const {
  auto nbrs = neighbors(u);
  check_vertex(v);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

Label Graph::label(VertexId v) const {
  check_vertex(v);
  return labels_[v];
}

std::optional<VertexId> Graph::index_of(Label label) const {
  auto it = std::lower_bound(label_lookup_.begin(), label_lookup_.end(),
                             std::pair<Label, VertexId>{label, 0});
  if (it == label_lookup_.end() || it->first != label) return std::nullopt;
  return it->second;
}

std::vector<Edge> Graph::edge_list() const {
  std::vector<Edge> edges;
  edges.reserve(num_edges());
  for (VertexId u = 0; u < num_vertices(); ++u) {
    for (VertexId v : neighbors(u)) {
      if (u < v) edges.emplace_back(u, v);
    }
  }
  return edges;
}

Graph Graph::induced_subgraph(std::span<const VertexId> vertices) const {
  std::vector<VertexId> selected(vertices.begin(), vertices.end());
  std::sort(selected.begin(), selected.end());
  constexpr VertexId kAbsent = std::numeric_limits<VertexId>::max();
  std::vector<VertexId> remap(num_vertices(), kAbsent);
  std::vector<Label> labels;
  labels.reserve(selected.size());
  for (std::size_t i = 0; i < selected.size(); ++i) {
    check_vertex(selected[i]);
    if (remap[selected[i]] != kAbsent) throw InvalidArgument("duplicate vertex in induced_subgraph");
    remap[selected[i]] = static_cast<VertexId>(i);
    labels.push_back(labels_[selected[i]]);
  }
  std::vector<Edge> edges;
  for (VertexId u : selected) {
    for (VertexId v : neighbors(u)) {
      if (u < v && remap[v] != kAbsent) edges.emplace_back(remap[u], remap[v]);
    }
  }
  return from_edges(selected.size(), edges, std::move(labels));
}

std::vector<std::uint32_t> connected_components(const Graph& g) {
  constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> component(g.num_vertices(), kUnseen);
  std::uint32_t next = 0;
  std::queue<VertexId> frontier;
  for (VertexId s = 0; s < g.num_vertices(); ++s) {
    if (component[s] != kUnseen) continue;
    component[s] = next;
    frontier.push(s);
    while (!frontier.empty()) {
      VertexId u = frontier.front();
      frontier.pop();
      for (VertexId v : g.neighbors(u)) {
        if (component[v] == kUnseen) {
          component[v] = next;
          frontier.push(v);
        }
      }
    }
    ++next;
  }
  return component;
}

Graph largest_connected_component(const Graph& g) {
  if (g.empty()) return g;
  auto component = connected_components(g);
  std::uint32_t num = *std::max_element(component.begin(), component.end()) + 1;
  std::vector<std::size_t> sizes(num, 0);
  for (auto c : component) ++sizes[c];
  // Ties go to the component containing the smallest vertex index.
  auto largest = static_cast<std::uint32_t>(
      std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  if (sizes[largest] == g.num_vertices()) return g;
  std::vector<VertexId> keep;
  keep.reserve(sizes[largest]);
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (component[v] == largest) keep.push_back(v);
  }
  return g.induced_subgraph(keep);
}

namespace {

bool parse_label(std::string_view token, Label& out) {
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc{} && ptr == token.data() + token.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

}  // namespace

Graph parse_edge_list(std::istream& in, const std::string& source_name, LoadOptions options) {
  std::vector<std::pair<Label, Label>> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = split_ws(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    if (tokens.size() < 2) throw ParseError(source_name, line_no, "expected two vertex labels");
    Label u = 0, v = 0;
    if (!parse_label(tokens[0], u) || !parse_label(tokens[1], v)) {
      throw ParseError(source_name, line_no,
                       "vertex labels must be nonnegative integers: '" + line + "'");
    }
    raw.emplace_back(u, v);
  }

  std::vector<Label> labels;
  labels.reserve(raw.size() * 2);
  for (auto [u, v] : raw) {
    labels.push_back(u);
    labels.push_back(v);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

  auto dense = [&labels](Label l) {
    return static_cast<VertexId>(std::lower_bound(labels.begin(), labels.end(), l) - labels.begin());
  };
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (auto [u, v] : raw) edges.emplace_back(dense(u), dense(v));
  raw.clear();
  raw.shrink_to_fit();

  const std::size_t n = labels.size();
  Graph g = Graph::from_edges(n, edges, std::move(labels));
  if (options.largest_component) g = largest_connected_component(g);
  if (g.empty()) throw EmptyGraphError(source_name + ": graph is empty after preprocessing");
  return g;
}

Graph load_edge_list(const std::filesystem::path& path, LoadOptions options) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open edge list: " + path.string());
  return parse_edge_list(in, path.string(), options);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  for (auto [u, v] : g.edge_list()) out << g.label(u) << ' ' << g.label(v) << '\n';
}

}  // namespace streamcut
