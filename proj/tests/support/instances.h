#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "mlsparse/distortion.h"
#include "mlsparse/exact_oracle.h"
#include "mlsparse/graph.h"
#include "mlsparse/levels.h"

namespace testing_support {

using namespace mlsparse;

inline Graph path3() { return Graph::from_edges({{1, 2, 1}, {2, 3, 1}}); }
inline Graph star4() { return Graph::from_edges({{0, 1, 1}, {0, 2, 1}, {0, 3, 1}}); }
// a=1, b=2, c=3
inline Graph tri() { return Graph::from_edges({{1, 2, 1}, {2, 3, 1}, {1, 3, 3}}); }
inline Graph cycle4() { return Graph::from_edges({{1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {1, 4, 1}}); }

// Random spanning tree on 0..n-1 plus `extra` random chords, integer
// weights in 1..max_w.
inline Graph random_connected(std::uint64_t seed, std::size_t n, std::size_t extra, int max_w = 5) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::uint64_t k) { return static_cast<std::size_t>(rng() % k); };
  std::vector<Edge> edges;
  std::set<std::pair<VertexId, VertexId>> used;
  auto add = [&](std::size_t a, std::size_t b) {
    VertexId u = static_cast<VertexId>(std::min(a, b)), v = static_cast<VertexId>(std::max(a, b));
    if (u == v || !used.insert({u, v}).second) return;
    edges.push_back({u, v, Rational(static_cast<std::int64_t>(1 + pick(max_w)))});
  };
  for (std::size_t i = 1; i < n; ++i) add(i, pick(i));
  for (std::size_t tries = 0; edges.size() < n - 1 + extra && tries < 1000; ++tries) add(pick(n), pick(n));
  return Graph::from_edges(std::move(edges));
}

inline std::vector<VertexId> random_subset(std::uint64_t seed, const Graph& g, std::size_t k) {
  std::mt19937_64 rng(seed);
  std::vector<VertexId> v = g.vertices();
  std::shuffle(v.begin(), v.end(), rng);
  v.resize(std::min(k, v.size()));
  std::sort(v.begin(), v.end());
  return v;
}

// Floyd-Warshall over the edges flagged in `mask` (bit e = edge id e).
// Unreachable pairs are nullopt.
inline std::vector<std::vector<std::optional<Rational>>> floyd_warshall(const Graph& g, std::uint64_t mask) {
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<std::optional<Rational>>> d(n, std::vector<std::optional<Rational>>(n));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = Rational(0);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (!(mask >> e & 1)) continue;
    std::size_t a = g.index_of(g.edge(e).u), b = g.index_of(g.edge(e).v);
    if (!d[a][b] || g.edge(e).w < *d[a][b]) d[a][b] = d[b][a] = g.edge(e).w;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] && d[k][j] && (!d[i][j] || *d[i][k] + *d[k][j] < *d[i][j])) d[i][j] = *d[i][k] + *d[k][j];
  return d;
}

inline std::uint64_t full_mask(const Graph& g) {
  return g.num_edges() == 64 ? ~0ULL : (1ULL << g.num_edges()) - 1;
}

inline bool brute_feasible(const Graph& g, const PairSet& pairs, const DistortionFn& f, std::uint64_t mask,
                           const std::vector<std::vector<std::optional<Rational>>>& dg) {
  auto d = floyd_warshall(g, mask);
  for (auto [u, v] : pairs.pairs()) {
    std::size_t a = g.index_of(u), b = g.index_of(v);
    if (!d[a][b] || *d[a][b] > f(*dg[a][b])) return false;
  }
  return true;
}

inline Rational mask_weight(const Graph& g, std::uint64_t mask) {
  Rational w;
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (mask >> e & 1) w += g.edge(e).w;
  return w;
}

inline std::vector<EdgeId> mask_ids(std::uint64_t mask) {
  std::vector<EdgeId> ids;
  for (EdgeId e = 0; e < 64; ++e)
    if (mask >> e & 1) ids.push_back(e);
  return ids;
}

// Every edge subset; minimum weight, ties to the lexicographically smallest
// sorted id list.
inline std::vector<EdgeId> brute_force_exact(const Graph& g, const PairSet& pairs, const DistortionFn& f) {
  const auto dg = floyd_warshall(g, full_mask(g));
  std::optional<Rational> best;
  std::vector<EdgeId> best_ids;
  for (std::uint64_t m = 0; m <= full_mask(g); ++m) {
    Rational w = mask_weight(g, m);
    if (best && w > *best) continue;
    if (!brute_feasible(g, pairs, f, m, dg)) continue;
    auto ids = mask_ids(m);
    if (!best || w < *best || ids < best_ids) {
      best = w;
      best_ids = ids;
    }
  }
  return best_ids;
}

// Brute-force multi-level optimum over grade vectors (spanner kind).
inline Rational brute_multilevel_cost(const Graph& g, const TerminalHierarchy& h, const DistortionFn& f,
                                      const LevelCostFn& gfn) {
  const std::size_t ell = h.num_levels(), m = g.num_edges();
  const auto dg = floyd_warshall(g, full_mask(g));
  std::vector<std::vector<char>> ok(ell, std::vector<char>(std::size_t{1} << m));
  for (std::size_t i = 0; i < ell; ++i) {
    PairSet p = PairSet::all_pairs(h.level(i + 1));
    for (std::uint64_t s = 0; s < (1ULL << m); ++s) ok[i][s] = brute_feasible(g, p, f, s, dg);
  }
  std::optional<Rational> best;
  std::vector<std::size_t> y(m, 0);
  for (;;) {
    bool feas = true;
    for (std::size_t i = 1; i <= ell && feas; ++i) {
      std::uint64_t s = 0;
      for (std::size_t e = 0; e < m; ++e)
        if (y[e] >= i) s |= 1ULL << e;
      feas = ok[i - 1][s];
    }
    if (feas) {
      Rational c;
      for (std::size_t e = 0; e < m; ++e)
        for (std::size_t i = 1; i <= y[e]; ++i) c += gfn.increment(i) * g.edge(static_cast<EdgeId>(e)).w;
      if (!best || c < *best) best = c;
    }
    std::size_t e = 0;
    while (e < m && y[e] == ell) y[e++] = 0;
    if (e == m) break;
    ++y[e];
  }
  return *best;
}

// All subsets Q of {1..ell} containing 1 as sorted vectors.
inline std::vector<std::vector<std::size_t>> all_quantizers(std::size_t ell) {
  std::vector<std::vector<std::size_t>> out;
  for (std::uint64_t bits = 0; bits < (1ULL << (ell - 1)); ++bits) {
    std::vector<std::size_t> q{1};
    for (std::size_t i = 2; i <= ell; ++i)
      if (bits >> (i - 2) & 1) q.push_back(i);
    out.push_back(q);
  }
  return out;
}

// sum_k g(i_{k+1} - 1) y_{i_k}
template <class Num>
Num q_objective(const std::vector<std::size_t>& q, const std::vector<Num>& y, const std::vector<Num>& gv) {
  const std::size_t ell = y.size();
  Num s(0);
  for (std::size_t k = 0; k < q.size(); ++k) {
    const std::size_t top = k + 1 < q.size() ? q[k + 1] - 1 : ell;
    s += gv[top] * y[q[k] - 1];
  }
  return s;
}

}  // namespace testing_support
