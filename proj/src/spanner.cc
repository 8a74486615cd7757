#include "mlsparse/spanner.h"

#include <algorithm>
#include <map>

#include "mlsparse/error.h"

namespace mlsparse {

EdgeSet greedy_spanner(const Graph& g, const Rational& t) {
  if (t < Rational(1)) throw InputError("spanner stretch must be >= 1, got " + t.to_string());
  std::vector<EdgeId> order(g.num_edges());
  for (EdgeId e = 0; e < order.size(); ++e) order[e] = e;
  std::stable_sort(order.begin(), order.end(),
                   [&](EdgeId a, EdgeId b) { return g.edge(a).w < g.edge(b).w; });
  std::vector<char> in(g.num_edges(), 0);
  std::vector<EdgeId> kept;
  for (EdgeId e : order) {
    const Rational budget = t * g.edge(e).w;
    auto tree = dijkstra(g, g.edge_u(e), in, budget);
    const auto& d = tree.dist[g.edge_v(e)];
    if (!d || *d > budget) {
      in[e] = 1;
      kept.push_back(e);
    }
  }
  std::sort(kept.begin(), kept.end());
  return EdgeSet(g, std::move(kept));
}

namespace {

// Runs one search per distinct source of the pair list and calls
// visit(u, v, d_G, d_{E'}) for every pair.
template <class Visit>
void for_pair_distances(const Graph& g, const EdgeSet& edges, const PairSet& pairs, Visit visit) {
  const auto mask = edges.mask(g);
  std::map<VertexId, std::pair<ShortestPathTree, ShortestPathTree>> trees;
  for (const auto& [u, v] : pairs.pairs()) {
    auto it = trees.find(u);
    if (it == trees.end()) {
      const std::size_t s = g.index_of(u);
      it = trees.emplace(u, std::make_pair(dijkstra(g, s), dijkstra(g, s, mask))).first;
    }
    const std::size_t b = g.index_of(v);
    const auto& dg = it->second.first.dist[b];
    if (!dg) throw InputError("pair " + std::to_string(u) + "," + std::to_string(v) + " is disconnected in G");
    visit(u, v, *dg, it->second.second.dist[b]);
  }
}

}  // namespace

StretchReport check_stretch(const Graph& g, const EdgeSet& edges, const PairSet& pairs,
                            const DistortionFn& f) {
  StretchReport r;
  bool first = true;
  for_pair_distances(g, edges, pairs, [&](VertexId u, VertexId v, const Rational& dg,
                                          const std::optional<Rational>& dh) {
    const Rational budget = f(dg);
    if (!dh) {
      if (r.worst_ratio) r.worst_pair = {u, v};
      r.ok = false;
      r.worst_ratio.reset();
      first = false;
      return;
    }
    if (*dh > budget) r.ok = false;
    if (!r.worst_ratio) return;
    const Rational ratio = *dh / budget;
    if (first || ratio > *r.worst_ratio) {
      r.worst_ratio = ratio;
      r.worst_pair = {u, v};
    }
    first = false;
  });
  return r;
}

std::optional<Rational> max_stretch(const Graph& g, const EdgeSet& edges, const PairSet& pairs) {
  std::optional<Rational> worst = Rational(1);
  for_pair_distances(g, edges, pairs, [&](VertexId, VertexId, const Rational& dg,
                                          const std::optional<Rational>& dh) {
    if (!dh) {
      worst.reset();
      return;
    }
    if (worst) worst = std::max(*worst, *dh / dg);
  });
  return worst;
}

SubsetSpanner subsetwise_spanner(const Graph& g, std::span<const VertexId> terminals,
                                 const DistortionFn& f) {
  SubsetSpanner out;
  out.terminals.assign(terminals.begin(), terminals.end());
  std::sort(out.terminals.begin(), out.terminals.end());
  out.terminals.erase(std::unique(out.terminals.begin(), out.terminals.end()), out.terminals.end());
  out.f = f;
  for (VertexId v : out.terminals) g.index_of(v);
  if (out.terminals.size() <= 1) return out;

  const ClosureGraph closure = metric_closure(g, out.terminals);
  EdgeSet selected;
  if (f.is_multiplicative()) {
    selected = greedy_spanner(closure.graph, f.stretch());
  } else {
    if (out.terminals.size() > kClosureOracleMaxTerminals) {
      throw GuardError("non-multiplicative distortion needs the exact oracle on the closure; " +
                       std::to_string(out.terminals.size()) + " terminals exceed the guard of " +
                       std::to_string(kClosureOracleMaxTerminals));
    }
    ExactOptions opts;
    opts.max_edges = kClosureOracleMaxTerminals * (kClosureOracleMaxTerminals - 1) / 2;
    selected = solve_exact(closure.graph, PairSet::all_pairs(out.terminals), f, opts);
  }
  out.edges = expand_paths(g, closure, selected);

  const PairSet pairs = PairSet::all_pairs(out.terminals);
  const StretchReport rep = check_stretch(g, out.edges, pairs, f);
  if (!rep.ok) {
    throw InternalError("subsetwise spanner violates its distortion at pair " +
                        std::to_string(rep.worst_pair.first) + "," + std::to_string(rep.worst_pair.second));
  }
  out.achieved_stretch = *max_stretch(g, out.edges, pairs);
  return out;
}

}  // namespace mlsparse
