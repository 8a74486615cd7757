#include "mlsparse/graph.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

#include "mlsparse/error.h"

namespace mlsparse {

Graph::Graph(std::vector<VertexId> vertices, std::vector<Edge> edges) {
  for (auto& e : edges) {
    if (e.u == e.v) {
      throw InputError("self-loop at vertex " + std::to_string(e.u));
    }
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.w <= Rational(0)) {
      throw InputError("nonpositive weight on edge " + std::to_string(e.u) + "-" +
                       std::to_string(e.v));
    }
    vertices.push_back(e.u);
    vertices.push_back(e.v);
  }
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  vertices_ = std::move(vertices);
  edges_ = std::move(edges);
  adjacency_.resize(vertices_.size());
  endpoints_.reserve(edges_.size());
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    std::size_t a = index_of(edges_[id].u), b = index_of(edges_[id].v);
    endpoints_.emplace_back(a, b);
    adjacency_[a].push_back({b, id});
    adjacency_[b].push_back({a, id});
  }
  for (auto& arcs : adjacency_) {
    std::sort(arcs.begin(), arcs.end(), [](const Arc& x, const Arc& y) { return x.to < y.to; });
    for (std::size_t i = 1; i < arcs.size(); ++i) {
      if (arcs[i].to == arcs[i - 1].to) {
        const Edge& e = edges_[arcs[i].edge];
        throw InputError("duplicate edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
      }
    }
  }
}

bool Graph::has_vertex(VertexId v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

std::size_t Graph::index_of(VertexId v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v) {
    throw InputError("unknown vertex " + std::to_string(v));
  }
  return static_cast<std::size_t>(it - vertices_.begin());
}

std::optional<EdgeId> Graph::find_edge(VertexId u, VertexId v) const {
  if (!has_vertex(u) || !has_vertex(v)) return std::nullopt;
  std::size_t a = index_of(u), b = index_of(v);
  auto arcs = this->arcs(a);
  auto it = std::lower_bound(arcs.begin(), arcs.end(), b,
                             [](const Arc& x, std::size_t t) { return x.to < t; });
  if (it != arcs.end() && it->to == b) return it->edge;
  return std::nullopt;
}

bool Graph::is_connected() const {
  if (vertices_.empty()) return true;
  std::vector<char> seen(vertices_.size(), 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    std::size_t x = stack.back();
    stack.pop_back();
    for (const Arc& a : adjacency_[x]) {
      if (!seen[a.to]) {
        seen[a.to] = 1;
        ++count;
        stack.push_back(a.to);
      }
    }
  }
  return count == vertices_.size();
}

Rational Graph::total_weight() const {
  Rational s;
  for (const auto& e : edges_) s += e.w;
  return s;
}

void require_connected(const Graph& g, std::string_view what) {
  if (!g.is_connected()) {
    throw InputError(std::string(what) + ": input graph is disconnected");
  }
}

// ---- EdgeSet ---------------------------------------------------------------

EdgeSet::EdgeSet(const Graph& g, std::vector<EdgeId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  for (EdgeId e : ids_) {
    if (e >= g.num_edges()) throw InputError("unknown edge id " + std::to_string(e));
    weight_ += g.edge(e).w;
  }
}

bool EdgeSet::contains(EdgeId e) const {
  return std::binary_search(ids_.begin(), ids_.end(), e);
}

std::vector<char> EdgeSet::mask(const Graph& g) const {
  std::vector<char> m(g.num_edges(), 0);
  for (EdgeId e : ids_) m[e] = 1;
  return m;
}

EdgeSet unite(const Graph& g, const EdgeSet& a, const EdgeSet& b) {
  std::vector<EdgeId> ids;
  ids.reserve(a.size() + b.size());
  std::set_union(a.ids().begin(), a.ids().end(), b.ids().begin(), b.ids().end(),
                 std::back_inserter(ids));
  return EdgeSet(g, std::move(ids));
}

bool is_subset(const EdgeSet& a, const EdgeSet& b) {
  return std::includes(b.ids().begin(), b.ids().end(), a.ids().begin(), a.ids().end());
}

// ---- text format -------------------------------------------------------------

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

VertexId parse_vertex(std::string_view tok, std::size_t lineno) {
  VertexId v = 0;
  auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (r.ec != std::errc() || r.ptr != tok.data() + tok.size()) {
    throw ParseError(lineno, "bad vertex identifier '" + std::string(tok) + "'");
  }
  return v;
}

}  // namespace

Graph parse_graph(std::string_view text, std::vector<std::string>* warnings) {
  std::vector<Edge> edges;
  std::map<std::pair<VertexId, VertexId>, std::size_t> seen;
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto toks = split_ws(line);
    if (toks.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (toks.size() != 3) throw ParseError(lineno, "expected 'u v w'");
    VertexId u = parse_vertex(toks[0], lineno), v = parse_vertex(toks[1], lineno);
    if (u == v) throw ParseError(lineno, "self-loop");
    Rational w;
    try {
      w = Rational::parse(toks[2]);
    } catch (const InputError&) {
      throw ParseError(lineno, "bad weight '" + std::string(toks[2]) + "'");
    }
    if (w <= Rational(0)) throw ParseError(lineno, "nonpositive weight");
    auto key = std::minmax(u, v);
    if (auto [it, fresh] = seen.emplace(key, lineno); !fresh) {
      throw ParseError(lineno, "duplicate edge (first on line " + std::to_string(it->second) + ")");
    }
    edges.push_back({key.first, key.second, w});
    if (end == text.size()) break;
  }
  Graph g = Graph::from_edges(std::move(edges));
  if (warnings && !g.is_connected()) warnings->push_back("graph is disconnected");
  return g;
}

Graph load_graph(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open graph file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_graph(ss.str(), warnings);
}

std::string format_graph(const Graph& g) {
  std::string out;
  for (const auto& e : g.edges()) {
    out += std::to_string(e.u) + " " + std::to_string(e.v) + " " + e.w.to_string() + "\n";
  }
  return out;
}

// ---- shortest paths ------------------------------------------------------------

std::vector<EdgeId> ShortestPathTree::path_to(std::size_t target) const {
  if (!dist[target]) throw InputError("target not reachable");
  std::vector<EdgeId> out;
  for (std::size_t x = target; x != source; x = pred[x]) out.push_back(pred_edge[x]);
  std::reverse(out.begin(), out.end());
  return out;
}

ShortestPathTree dijkstra(const Graph& g, std::size_t source, std::span<const char> allowed,
                          std::optional<Rational> cutoff) {
  const std::size_t n = g.num_vertices();
  ShortestPathTree t;
  t.source = source;
  t.dist.assign(n, std::nullopt);
  t.pred.assign(n, kNoVertex);
  t.pred_edge.assign(n, kNoEdge);
  std::vector<char> done(n, 0);
  using Item = std::pair<Rational, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  t.dist[source] = Rational(0);
  heap.emplace(Rational(0), source);
  while (!heap.empty()) {
    auto [d, x] = heap.top();
    heap.pop();
    if (done[x]) continue;
    done[x] = 1;
    for (const auto& arc : g.arcs(x)) {
      if (!allowed.empty() && !allowed[arc.edge]) continue;
      if (done[arc.to]) continue;
      Rational nd = d + g.edge(arc.edge).w;
      if (cutoff && nd > *cutoff) continue;
      auto& cur = t.dist[arc.to];
      if (!cur || nd < *cur) {
        cur = nd;
        t.pred[arc.to] = x;
        t.pred_edge[arc.to] = arc.edge;
        heap.emplace(nd, arc.to);
      } else if (nd == *cur && x < t.pred[arc.to]) {
        t.pred[arc.to] = x;
        t.pred_edge[arc.to] = arc.edge;
      }
    }
  }
  return t;
}

ShortestPathTable::ShortestPathTable(std::vector<ShortestPathTree> trees, std::vector<VertexId> ids)
    : trees_(std::move(trees)), ids_(std::move(ids)) {}

std::size_t ShortestPathTable::index(VertexId v) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
  if (it == ids_.end() || *it != v) throw InputError("unknown vertex " + std::to_string(v));
  return static_cast<std::size_t>(it - ids_.begin());
}

Rational ShortestPathTable::dist(VertexId u, VertexId v) const {
  return dist_index(index(u), index(v));
}

std::vector<EdgeId> ShortestPathTable::path(VertexId u, VertexId v) const {
  return trees_[index(u)].path_to(index(v));
}

ShortestPathTable apsp(const Graph& g) {
  require_connected(g, "apsp");
  std::vector<ShortestPathTree> trees;
  trees.reserve(g.num_vertices());
  for (std::size_t s = 0; s < g.num_vertices(); ++s) trees.push_back(dijkstra(g, s));
  return ShortestPathTable(std::move(trees), g.vertices());
}

Rational diameter(const Graph& g) {
  require_connected(g, "diameter");
  Rational best;
  for (std::size_t s = 0; s < g.num_vertices(); ++s) {
    auto t = dijkstra(g, s);
    for (const auto& d : t.dist) best = std::max(best, *d);
  }
  return best;
}

double diameter_double(const Graph& g) { return diameter(g).to_double(); }

// ---- metric closure --------------------------------------------------------------

ClosureGraph metric_closure(const Graph& g, std::span<const VertexId> terminals) {
  if (terminals.empty()) throw InputError("metric_closure: empty terminal set");
  std::vector<VertexId> t(terminals.begin(), terminals.end());
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  for (VertexId v : t) {
    if (!g.has_vertex(v)) {
      throw InputError("metric_closure: terminal " + std::to_string(v) + " not in graph");
    }
  }
  std::vector<Edge> edges;
  std::vector<std::vector<EdgeId>> paths;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i + 1 == t.size()) break;
    auto tree = dijkstra(g, g.index_of(t[i]));
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      std::size_t target = g.index_of(t[j]);
      if (!tree.dist[target]) {
        throw InputError("metric_closure: terminals " + std::to_string(t[i]) + " and " +
                         std::to_string(t[j]) + " are disconnected");
      }
      edges.push_back({t[i], t[j], *tree.dist[target]});
      paths.push_back(tree.path_to(target));
    }
  }
  return ClosureGraph{Graph(t, std::move(edges)), std::move(paths)};
}

EdgeSet expand_paths(const Graph& base, const ClosureGraph& closure, const EdgeSet& selected) {
  std::vector<EdgeId> ids;
  for (EdgeId ce : selected.ids()) {
    if (ce >= closure.paths.size()) {
      throw InputError("expand_paths: unknown closure edge " + std::to_string(ce));
    }
    const auto& p = closure.paths[ce];
    ids.insert(ids.end(), p.begin(), p.end());
  }
  return EdgeSet(base, std::move(ids));
}

// ---- trees ---------------------------------------------------------------------

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

void sort_by_weight(const Graph& g, std::vector<EdgeId>& ids) {
  std::sort(ids.begin(), ids.end(), [&](EdgeId a, EdgeId b) {
    const auto& wa = g.edge(a).w;
    const auto& wb = g.edge(b).w;
    return wa != wb ? wa < wb : a < b;
  });
}

}  // namespace

EdgeSet mst(const Graph& g) {
  require_connected(g, "mst");
  std::vector<EdgeId> all(g.num_edges());
  std::iota(all.begin(), all.end(), 0);
  return spanning_forest(g, EdgeSet(g, std::move(all)));
}

EdgeSet spanning_forest(const Graph& g, const EdgeSet& candidates, const EdgeSet& preferred) {
  std::vector<EdgeId> rest;
  for (EdgeId e : candidates.ids()) {
    if (!preferred.contains(e)) rest.push_back(e);
  }
  sort_by_weight(g, rest);
  std::vector<EdgeId> order(preferred.ids().begin(), preferred.ids().end());
  order.insert(order.end(), rest.begin(), rest.end());
  DisjointSets ds(g.num_vertices());
  std::vector<EdgeId> kept;
  for (EdgeId e : order) {
    if (ds.unite(g.edge_u(e), g.edge_v(e))) kept.push_back(e);
  }
  return EdgeSet(g, std::move(kept));
}

EdgeSet prune_leaves(const Graph& g, const EdgeSet& edges, std::span<const VertexId> terminals) {
  std::vector<char> terminal(g.num_vertices(), 0);
  for (VertexId v : terminals) terminal[g.index_of(v)] = 1;
  std::vector<char> alive = edges.mask(g);
  std::vector<std::size_t> degree(g.num_vertices(), 0);
  for (EdgeId e : edges.ids()) {
    ++degree[g.edge_u(e)];
    ++degree[g.edge_v(e)];
  }
  std::vector<std::size_t> queue;
  for (std::size_t x = 0; x < g.num_vertices(); ++x) {
    if (degree[x] == 1 && !terminal[x]) queue.push_back(x);
  }
  while (!queue.empty()) {
    std::size_t x = queue.back();
    queue.pop_back();
    if (degree[x] != 1 || terminal[x]) continue;
    for (const auto& arc : g.arcs(x)) {
      if (!alive[arc.edge]) continue;
      alive[arc.edge] = 0;
      --degree[x];
      if (--degree[arc.to] == 1 && !terminal[arc.to]) queue.push_back(arc.to);
      break;
    }
  }
  std::vector<EdgeId> kept;
  for (EdgeId e : edges.ids()) {
    if (alive[e]) kept.push_back(e);
  }
  return EdgeSet(g, std::move(kept));
}

bool is_acyclic(const Graph& g, const EdgeSet& edges) {
  DisjointSets ds(g.num_vertices());
  for (EdgeId e : edges.ids()) {
    if (!ds.unite(g.edge_u(e), g.edge_v(e))) return false;
  }
  return true;
}

bool connects(const Graph& g, const EdgeSet& edges, std::span<const VertexId> terminals) {
  if (terminals.size() <= 1) return true;
  DisjointSets ds(g.num_vertices());
  for (EdgeId e : edges.ids()) ds.unite(g.edge_u(e), g.edge_v(e));
  std::size_t root = ds.find(g.index_of(terminals[0]));
  for (VertexId v : terminals) {
    if (ds.find(g.index_of(v)) != root) return false;
  }
  return true;
}

EdgeSet steiner_2approx(const Graph& g, std::span<const VertexId> terminals) {
  ClosureGraph closure = metric_closure(g, terminals);
  if (closure.graph.num_vertices() <= 1) return EdgeSet();
  EdgeSet expanded = expand_paths(g, closure, mst(closure.graph));
  // Shortest paths from different roots can close a cycle.
  EdgeSet tree = spanning_forest(g, expanded);
  return prune_leaves(g, tree, terminals);
}

}  // namespace mlsparse
