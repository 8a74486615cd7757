#include <algorithm>
#include <bit>
#include <optional>
#include <queue>

#include "mlsparse/error.h"
#include "mlsparse/graph.h"

namespace mlsparse {
namespace {

// dp[S][v]: cheapest tree spanning terminal subset S plus vertex v.
struct Cell {
  std::optional<Rational> cost;
  enum class Kind : std::uint8_t { kNone, kBase, kSplit, kEdge } kind = Kind::kNone;
  std::uint32_t split = 0;         // kSplit: one side of the partition of S
  std::size_t from = kNoVertex;    // kEdge: neighbour the tree extends from
  EdgeId edge = kNoEdge;
};

}  // namespace

EdgeSet steiner_exact(const Graph& g, std::span<const VertexId> terminals) {
  std::vector<VertexId> t(terminals.begin(), terminals.end());
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  if (t.empty()) throw InputError("steiner_exact: empty terminal set");
  if (t.size() > kSteinerExactMaxTerminals || g.num_vertices() > kSteinerExactMaxVertices) {
    throw GuardError("steiner_exact: instance exceeds guard (|T| <= " +
                     std::to_string(kSteinerExactMaxTerminals) + ", |V| <= " +
                     std::to_string(kSteinerExactMaxVertices) + ")");
  }
  for (VertexId v : t) g.index_of(v);
  if (t.size() == 1) return EdgeSet();
  if (!connects(g, EdgeSet(g, [&] {
                  std::vector<EdgeId> all(g.num_edges());
                  for (EdgeId e = 0; e < all.size(); ++e) all[e] = e;
                  return all;
                }()),
                t)) {
    throw InputError("steiner_exact: terminals are disconnected");
  }

  const std::size_t n = g.num_vertices();
  const std::uint32_t full = (1u << t.size()) - 1;
  std::vector<std::vector<Cell>> dp(full + 1, std::vector<Cell>(n));
  for (std::size_t i = 0; i < t.size(); ++i) {
    Cell& c = dp[1u << i][g.index_of(t[i])];
    c.cost = Rational(0);
    c.kind = Cell::Kind::kBase;
  }

  for (std::uint32_t s = 1; s <= full; ++s) {
    auto& row = dp[s];
    if (std::popcount(s) > 1) {
      // Enumerate splits where the lower part holds the lowest terminal.
      const std::uint32_t low = s & (~s + 1);
      for (std::uint32_t a = (s - 1) & s; a > 0; a = (a - 1) & s) {
        if (!(a & low)) continue;
        const std::uint32_t b = s ^ a;
        for (std::size_t v = 0; v < n; ++v) {
          const auto& x = dp[a][v].cost;
          const auto& y = dp[b][v].cost;
          if (!x || !y) continue;
          Rational c = *x + *y;
          if (!row[v].cost || c < *row[v].cost) {
            row[v].cost = c;
            row[v].kind = Cell::Kind::kSplit;
            row[v].split = a;
          }
        }
      }
    }
    // Grow the trees of this row along graph edges.
    using Item = std::pair<Rational, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (std::size_t v = 0; v < n; ++v) {
      if (row[v].cost) heap.emplace(*row[v].cost, v);
    }
    std::vector<char> done(n, 0);
    while (!heap.empty()) {
      auto [d, x] = heap.top();
      heap.pop();
      if (done[x] || d != *row[x].cost) continue;
      done[x] = 1;
      for (const auto& arc : g.arcs(x)) {
        Rational nd = d + g.edge(arc.edge).w;
        auto& cell = row[arc.to];
        if (!cell.cost || nd < *cell.cost) {
          cell.cost = nd;
          cell.kind = Cell::Kind::kEdge;
          cell.from = x;
          cell.edge = arc.edge;
          heap.emplace(nd, arc.to);
        }
      }
    }
  }

  std::vector<EdgeId> edges;
  std::vector<std::pair<std::uint32_t, std::size_t>> stack{{full, g.index_of(t[0])}};
  while (!stack.empty()) {
    auto [s, v] = stack.back();
    stack.pop_back();
    const Cell& c = dp[s][v];
    switch (c.kind) {
      case Cell::Kind::kBase:
        break;
      case Cell::Kind::kSplit:
        stack.emplace_back(c.split, v);
        stack.emplace_back(s ^ c.split, v);
        break;
      case Cell::Kind::kEdge:
        edges.push_back(c.edge);
        stack.emplace_back(s, c.from);
        break;
      case Cell::Kind::kNone:
        throw InternalError("steiner_exact: broken back-pointer");
    }
  }
  EdgeSet result(g, std::move(edges));
  if (result.weight() != *dp[full][g.index_of(t[0])].cost) {
    throw InternalError("steiner_exact: reconstruction weight mismatch");
  }
  return result;
}

}  // namespace mlsparse
