#include "mlsparse/multilevel.h"

#include <algorithm>
#include <charconv>

#include "mlsparse/error.h"
#include "mlsparse/exact_oracle.h"
#include "mlsparse/spanner.h"

namespace mlsparse {

// ---- Quantizer ---------------------------------------------------------------

Quantizer::Quantizer(std::vector<std::size_t> elements, std::size_t ell) : q_(std::move(elements)), ell_(ell) {
  if (ell_ == 0) throw InputError("quantizer needs ell >= 1");
  std::sort(q_.begin(), q_.end());
  if (q_.empty() || q_.front() != 1) throw InputError("quantizer must contain level 1");
  for (std::size_t k = 0; k < q_.size(); ++k) {
    if (q_[k] > ell_) throw InputError("quantizer level " + std::to_string(q_[k]) + " exceeds ell");
    if (k > 0 && q_[k] == q_[k - 1]) throw InputError("quantizer lists level " + std::to_string(q_[k]) + " twice");
  }
}

Quantizer Quantizer::bottom_up(std::size_t ell) {
  return ell == 1 ? Quantizer({1}, 1) : Quantizer({1, ell}, ell);
}

Quantizer Quantizer::top_down(std::size_t ell) {
  std::vector<std::size_t> q(ell);
  for (std::size_t i = 0; i < ell; ++i) q[i] = i + 1;
  return Quantizer(std::move(q), ell);
}

Quantizer Quantizer::powers_of_two(std::size_t ell) {
  std::vector<std::size_t> q;
  for (std::size_t p = 1; p <= ell; p *= 2) q.push_back(p);
  return Quantizer(std::move(q), ell);
}

Quantizer Quantizer::parse(std::string_view text, std::size_t ell) {
  std::vector<std::size_t> q;
  while (!text.empty()) {
    auto comma = text.find(',');
    auto tok = text.substr(0, comma);
    std::size_t v = 0;
    auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (r.ec != std::errc() || r.ptr != tok.data() + tok.size()) {
      throw InputError("bad quantizer level '" + std::string(tok) + "'");
    }
    q.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return Quantizer(std::move(q), ell);
}

std::size_t Quantizer::top_served(std::size_t k) const {
  return k + 1 < q_.size() ? q_[k + 1] - 1 : ell_;
}

std::size_t Quantizer::block_of(std::size_t level) const {
  auto it = std::upper_bound(q_.begin(), q_.end(), level);
  return static_cast<std::size_t>(it - q_.begin()) - 1;
}

std::string Quantizer::to_string() const {
  std::string s;
  for (std::size_t k = 0; k < q_.size(); ++k) s += (k ? "," : "") + std::to_string(q_[k]);
  return s;
}

QuantizerProfile quantizer_profile(const LevelCostFn& g, const Quantizer& q) {
  g.check_levels(q.ell());
  QuantizerProfile p{Rational(1), Rational(1)};
  for (std::size_t i = 1; i <= q.ell(); ++i) {
    const std::size_t r = q.top_served(q.block_of(i));
    p.A = std::max(p.A, g(r) / g(i));
  }
  Rational prefix;
  for (std::size_t k = 0; k < q.size(); ++k) {
    const Rational gr = g(q.top_served(k));
    prefix += gr;
    p.B = std::max(p.B, prefix / gr);
  }
  return p;
}

Rational rounding_bound(const Quantizer& q, const LevelCostFn& g, std::span<const Rational> mins) {
  if (mins.size() != q.ell()) throw InputError("rounding_bound: need one weight per level");
  Rational s;
  for (std::size_t k = 0; k < q.size(); ++k) s += g(q.top_served(k)) * mins[q.elements()[k] - 1];
  return s;
}

// ---- single-level solvers ------------------------------------------------------

LevelSolver oracle_solver(const Graph& g, const SparsifierKind& kind, ExactOptions options) {
  if (kind.is_spanner()) {
    return [&g, f = kind.f, options](const std::vector<VertexId>& t) {
      return solve_exact(g, PairSet::all_pairs(t), f, options);
    };
  }
  return [&g](const std::vector<VertexId>& t) { return steiner_exact(g, t); };
}

LevelSolver metric_closure_solver(const Graph& g, const SparsifierKind& kind) {
  if (kind.is_spanner()) {
    return [&g, f = kind.f](const std::vector<VertexId>& t) { return subsetwise_spanner(g, t, f).edges; };
  }
  return [&g](const std::vector<VertexId>& t) { return steiner_2approx(g, t); };
}

LevelCache::LevelCache(const TerminalHierarchy& h, LevelSolver solver)
    : h_(h), solver_(std::move(solver)), cache_(h.num_levels()) {}

const EdgeSet& LevelCache::get(std::size_t level) {
  auto& slot = cache_.at(level - 1);
  if (!slot) {
    slot = solver_(h_.level(level));
    ++solves_;
  }
  return *slot;
}

// ---- rounding ------------------------------------------------------------------

EdgeSet merge(const Graph& g, const SparsifierKind& kind, const EdgeSet& s1, const EdgeSet& s2,
              std::span<const VertexId> terminals) {
  EdgeSet u = unite(g, s1, s2);
  if (kind.is_spanner() || is_acyclic(g, u)) return u;
  return prune_leaves(g, spanning_forest(g, u, s1), terminals);
}

MultiLevelSolution round_mlags(const Graph& g, const TerminalHierarchy& h, const Quantizer& q,
                               const SparsifierKind& kind, LevelCache& cache) {
  if (q.ell() != h.num_levels()) throw InputError("quantizer and hierarchy disagree on ell");
  const std::size_t m = q.size();
  std::vector<EdgeSet> block(m);
  EdgeSet acc;
  for (std::size_t k = m; k-- > 0;) {
    const std::size_t level = q.elements()[k];
    acc = merge(g, kind, acc, cache.get(level), h.level(level));
    block[k] = acc;
  }
  std::vector<EdgeSet> levels;
  for (std::size_t i = 1; i <= q.ell(); ++i) levels.push_back(block[q.block_of(i)]);
  return MultiLevelSolution(std::move(levels));
}

MultiLevelSolution round_mlags(const Graph& g, const TerminalHierarchy& h, const Quantizer& q,
                               const SparsifierKind& kind, const LevelSolver& solver) {
  LevelCache cache(h, solver);
  return round_mlags(g, h, q, kind, cache);
}

BestQ<Rational> best_q(std::span<const Rational> y, const LevelCostFn& g) {
  g.check_levels(y.size());
  std::vector<Rational> gv(y.size() + 1);
  for (std::size_t i = 0; i <= y.size(); ++i) gv[i] = g(i);
  for (const auto& v : y) {
    if (v < Rational(0)) throw InputError("best_q: negative level weight");
  }
  return best_q<Rational>(y, gv);
}

CompositeResult composite(const Graph& g, const TerminalHierarchy& h, const SparsifierKind& kind,
                          const LevelCostFn& gfn, LevelCache& cache, CompositeMode mode) {
  const std::size_t ell = h.num_levels();
  gfn.check_levels(ell);
  if (mode == CompositeMode::kMeasured) {
    std::vector<Rational> mins;
    for (std::size_t i = 1; i <= ell; ++i) mins.push_back(cache.get(i).weight());
    Quantizer q(best_q(std::span<const Rational>(mins), gfn).q, ell);
    auto sol = round_mlags(g, h, q, kind, cache);
    Rational c = sol.cost(g, gfn);
    return {std::move(sol), std::move(q), c};
  }
  if (ell > kCompositeEnumerateMaxLevels) {
    throw GuardError("composite enumerate mode supports ell <= " +
                     std::to_string(kCompositeEnumerateMaxLevels));
  }
  std::optional<CompositeResult> best;
  const std::uint64_t subsets = std::uint64_t{1} << (ell - 1);
  for (std::uint64_t bits = 0; bits < subsets; ++bits) {
    std::vector<std::size_t> el{1};
    for (std::size_t i = 2; i <= ell; ++i) {
      if (bits >> (i - 2) & 1) el.push_back(i);
    }
    Quantizer q(std::move(el), ell);
    auto sol = round_mlags(g, h, q, kind, cache);
    Rational c = sol.cost(g, gfn);
    if (!best || c < best->cost ||
        (c == best->cost && (q.size() < best->q.size() ||
                             (q.size() == best->q.size() && q.elements() < best->q.elements())))) {
      best = CompositeResult{std::move(sol), std::move(q), c};
    }
  }
  return std::move(*best);
}

// ---- metric closure multilevel spanner -------------------------------------------

ClosureMultilevelResult ml_metric_closure_spanner(const Graph& g, const TerminalHierarchy& h,
                                                  const DistortionFn& f) {
  require_connected(g, "ml_metric_closure_spanner");
  h.check_within(g);
  const EdgeSet e1 = subsetwise_spanner(g, h.level(1), f).edges;
  const auto mask = e1.mask(g);
  std::vector<EdgeSet> levels{e1};
  for (std::size_t j = 2; j <= h.num_levels(); ++j) {
    const auto& t = h.level(j);
    std::vector<EdgeId> ids;
    for (std::size_t a = 0; a < t.size(); ++a) {
      const auto tree = dijkstra(g, g.index_of(t[a]), mask);
      for (std::size_t b = a + 1; b < t.size(); ++b) {
        const std::size_t target = g.index_of(t[b]);
        if (!tree.dist[target]) throw InternalError("level-1 spanner does not connect its terminals");
        auto p = tree.path_to(target);
        ids.insert(ids.end(), p.begin(), p.end());
      }
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    levels.emplace_back(g, std::move(ids));
  }
  ClosureMultilevelResult out{MultiLevelSolution(std::move(levels)), {}};
  for (std::size_t j = 1; j <= h.num_levels(); ++j) {
    const PairSet pairs = PairSet::all_pairs(h.level(j));
    LevelStretch ls;
    ls.ok = check_stretch(g, out.solution.level(j), pairs, f).ok;
    ls.stretch = max_stretch(g, out.solution.level(j), pairs);
    out.levels.push_back(ls);
  }
  return out;
}

std::vector<int> grades_view(const Graph& g, const MultiLevelSolution& s) { return s.grades(g); }

bool verify_solution(const Graph& g, const TerminalHierarchy& h, const SparsifierKind& kind,
                     const MultiLevelSolution& s, std::string* why) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  if (s.num_levels() != h.num_levels()) return fail("level count mismatch");
  for (std::size_t i = 2; i <= s.num_levels(); ++i) {
    if (!is_subset(s.level(i), s.level(i - 1))) return fail("levels not nested at " + std::to_string(i));
  }
  for (std::size_t i = 1; i <= s.num_levels(); ++i) {
    const auto& t = h.level(i);
    if (kind.is_spanner()) {
      auto rep = check_stretch(g, s.level(i), PairSet::all_pairs(t), kind.f);
      if (!rep.ok) {
        return fail("level " + std::to_string(i) + " violates stretch at " +
                    std::to_string(rep.worst_pair.first) + "," + std::to_string(rep.worst_pair.second));
      }
    } else {
      if (!connects(g, s.level(i), t)) return fail("level " + std::to_string(i) + " does not connect T");
      if (!is_acyclic(g, s.level(i))) return fail("level " + std::to_string(i) + " has a cycle");
    }
  }
  return true;
}

}  // namespace mlsparse
