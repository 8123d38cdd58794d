#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace balgraph {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
  Vertex origin = 0;
  Vertex endpoint = 0;

  bool is_loop() const { return origin == endpoint; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

class GraphParseError : public std::runtime_error {
 public:
  GraphParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Directed multigraph. Loops and parallel edges are allowed; an edge is
/// identified by its position in the edge list, never by its endpoints.
class Digraph {
 public:
  Digraph() = default;
  /// Throws std::invalid_argument if an edge mentions a vertex >= vertex_count.
  Digraph(std::size_t vertex_count, std::vector<Edge> edges);

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId id) const { return edges_[id]; }

  /// Edge ids whose origin is v, ascending.
  const std::vector<EdgeId>& out_edges(Vertex v) const { return out_[v]; }
  /// Edge ids whose endpoint is v, ascending.
  const std::vector<EdgeId>& in_edges(Vertex v) const { return in_[v]; }

  /// Copy with edge `id` pointing the other way.
  Digraph with_reversed_edge(EdgeId id) const;

 private:
  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
};

/// Parses the edge-list format:
///
///   # comment
///   n=4          (optional, must precede the edges)
///   0 1          (one directed edge origin -> endpoint per line)
///
/// Without `n=`, the vertex count is one more than the largest index used.
Digraph parse_graph(std::string_view text);
Digraph load_graph_file(const std::string& path);
std::string format_graph(const Digraph& g);

struct StructureReport {
  bool weakly_connected = true;
  /// Bipartiteness of the underlying undirected graph; any loop makes it false.
  bool bipartite = true;
  std::size_t scc_count = 0;
  std::size_t cross_scc_edges = 0;
  /// Component id per vertex, 0..scc_count-1. Components are numbered in
  /// order of their smallest vertex.
  std::vector<std::size_t> scc_assignment;
};

StructureReport analyze(const Digraph& g);

bool is_weakly_connected(const Digraph& g);
bool is_underlying_bipartite(const Digraph& g);

/// Strongly connected components (iterative Tarjan). Returns the component
/// id of each vertex, numbered by smallest member vertex.
std::vector<std::size_t> strongly_connected_components(const Digraph& g);

}  // namespace balgraph
