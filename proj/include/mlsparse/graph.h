#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mlsparse/rational.h"

namespace mlsparse {

using VertexId = std::int64_t;
using EdgeId = std::uint32_t;

inline constexpr std::size_t kNoVertex = static_cast<std::size_t>(-1);
inline constexpr EdgeId kNoEdge = static_cast<EdgeId>(-1);

// Undirected weighted edge, stored with u < v.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  Rational w;
};

// Weighted undirected simple graph. Vertex identifiers are arbitrary integers
// kept in ascending order; internally vertex i of vertices() has index i.
// Edge identifiers are positions in edges(), i.e. insertion order.
// Immutable after construction.
class Graph {
 public:
  struct Arc {
    std::size_t to;  // vertex index
    EdgeId edge;
  };

  Graph() = default;
  // Throws InputError on self-loops, duplicate pairs, nonpositive weights or
  // endpoints missing from `vertices`. Endpoints not listed are added.
  Graph(std::vector<VertexId> vertices, std::vector<Edge> edges);
  static Graph from_edges(std::vector<Edge> edges) { return Graph({}, std::move(edges)); }

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }

  bool has_vertex(VertexId v) const;
  // Index of a vertex identifier; throws InputError if absent.
  std::size_t index_of(VertexId v) const;
  VertexId id_of(std::size_t index) const { return vertices_[index]; }
  std::size_t edge_u(EdgeId e) const { return endpoints_[e].first; }
  std::size_t edge_v(EdgeId e) const { return endpoints_[e].second; }

  // Arcs of a vertex index, sorted by neighbour index.
  std::span<const Arc> arcs(std::size_t index) const {
    return {adjacency_[index].data(), adjacency_[index].size()};
  }

  std::optional<EdgeId> find_edge(VertexId u, VertexId v) const;
  bool is_connected() const;
  Rational total_weight() const;

 private:
  std::vector<VertexId> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::pair<std::size_t, std::size_t>> endpoints_;
  std::vector<std::vector<Arc>> adjacency_;
};

// Throws InputError naming `what` unless g is connected.
void require_connected(const Graph& g, std::string_view what);

// Sorted, duplicate-free edge identifiers of some parent graph, together with
// their total weight.
class EdgeSet {
 public:
  EdgeSet() = default;
  // Validates membership; throws InputError for unknown identifiers.
  EdgeSet(const Graph& g, std::vector<EdgeId> ids);

  const std::vector<EdgeId>& ids() const { return ids_; }
  const Rational& weight() const { return weight_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  bool contains(EdgeId e) const;
  // Membership flags indexed by EdgeId, sized to the parent graph.
  std::vector<char> mask(const Graph& g) const;

  friend bool operator==(const EdgeSet& a, const EdgeSet& b) { return a.ids_ == b.ids_; }

 private:
  std::vector<EdgeId> ids_;
  Rational weight_;
};

EdgeSet unite(const Graph& g, const EdgeSet& a, const EdgeSet& b);
bool is_subset(const EdgeSet& a, const EdgeSet& b);

// ---- text formats --------------------------------------------------------

// Edge-list document: "u v w" per line, '#' comments and blank lines ignored.
// Weights may be integers, decimals or p/q. A disconnected graph is accepted;
// a message is appended to `warnings` when given.
Graph parse_graph(std::string_view text, std::vector<std::string>* warnings = nullptr);
Graph load_graph(const std::string& path, std::vector<std::string>* warnings = nullptr);
std::string format_graph(const Graph& g);

// ---- shortest paths ------------------------------------------------------

// Result of a single-source search. Unreached vertices have no distance.
struct ShortestPathTree {
  std::size_t source = kNoVertex;
  std::vector<std::optional<Rational>> dist;
  std::vector<std::size_t> pred;     // predecessor vertex index
  std::vector<EdgeId> pred_edge;     // edge used to reach the vertex

  // Edges of the tree path from the source to `target`, source side first.
  std::vector<EdgeId> path_to(std::size_t target) const;
};

// Dijkstra from a vertex index. When `allowed` is non-empty only edges with a
// nonzero flag are used. Among equal-length routes the predecessor with the
// smallest identifier wins. Vertices farther than `cutoff` (if given) are
// left unreached.
ShortestPathTree dijkstra(const Graph& g, std::size_t source,
                          std::span<const char> allowed = {},
                          std::optional<Rational> cutoff = std::nullopt);

class ShortestPathTable {
 public:
  explicit ShortestPathTable(std::vector<ShortestPathTree> trees, std::vector<VertexId> ids);

  const Rational& dist_index(std::size_t a, std::size_t b) const { return *trees_[a].dist[b]; }
  Rational dist(VertexId u, VertexId v) const;
  // Edge identifiers of the deterministic shortest path u -> v.
  std::vector<EdgeId> path(VertexId u, VertexId v) const;
  std::size_t size() const { return trees_.size(); }

 private:
  std::size_t index(VertexId v) const;
  std::vector<ShortestPathTree> trees_;
  std::vector<VertexId> ids_;
};

// All-pairs shortest paths. Requires a connected graph.
ShortestPathTable apsp(const Graph& g);

double diameter_double(const Graph& g);
Rational diameter(const Graph& g);

// ---- metric closure ------------------------------------------------------

// Complete graph over a terminal set with shortest-path weights, plus a
// witnessing path in the base graph for every closure edge.
struct ClosureGraph {
  Graph graph;
  // paths[closure edge id] = base-graph edges of the u->v shortest path.
  std::vector<std::vector<EdgeId>> paths;
};

ClosureGraph metric_closure(const Graph& g, std::span<const VertexId> terminals);

// Union of the base-graph paths of the selected closure edges.
EdgeSet expand_paths(const Graph& base, const ClosureGraph& closure, const EdgeSet& selected);

// ---- trees ---------------------------------------------------------------

// Kruskal over (weight, id). Requires a connected graph.
EdgeSet mst(const Graph& g);

// Kruskal restricted to `candidates`, taking edges of `preferred` first
// (by id) and then the rest by (weight, id). Returns a spanning forest of the
// candidate subgraph.
EdgeSet spanning_forest(const Graph& g, const EdgeSet& candidates,
                        const EdgeSet& preferred = {});

// Repeatedly removes edges incident to degree-one vertices that are not
// terminals.
EdgeSet prune_leaves(const Graph& g, const EdgeSet& edges, std::span<const VertexId> terminals);

bool is_acyclic(const Graph& g, const EdgeSet& edges);
// True when all terminals lie in one component of the edge subgraph.
bool connects(const Graph& g, const EdgeSet& edges, std::span<const VertexId> terminals);

// Minimum spanning tree of the metric closure, expanded and pruned to a tree.
EdgeSet steiner_2approx(const Graph& g, std::span<const VertexId> terminals);

inline constexpr std::size_t kSteinerExactMaxTerminals = 10;
inline constexpr std::size_t kSteinerExactMaxVertices = 20;

// Minimum Steiner tree by dynamic programming over terminal subsets.
// Throws GuardError above the size guard.
EdgeSet steiner_exact(const Graph& g, std::span<const VertexId> terminals);

}  // namespace mlsparse
