#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mlsparse/distortion.h"
#include "mlsparse/exact_oracle.h"
#include "mlsparse/graph.h"
#include "mlsparse/levels.h"

namespace mlsparse {

// Rounding set Q = {i_1 = 1 < i_2 < ... < i_m <= ell}. Single-level
// sparsifiers are computed only at the levels of Q; level i is served by
// H_k for the largest k in Q with k <= i, merged with every H_j, j in Q, j > i.
class Quantizer {
 public:
  // Throws InputError unless 1 is present, elements lie in 1..ell and are
  // strictly increasing after sorting (duplicates rejected).
  Quantizer(std::vector<std::size_t> elements, std::size_t ell);

  static Quantizer bottom_up(std::size_t ell);     // {1, ell}
  static Quantizer top_down(std::size_t ell);      // {1, ..., ell}
  static Quantizer powers_of_two(std::size_t ell);  // {1, 2, 4, ...} up to ell
  // Comma separated levels, e.g. "1,4,6".
  static Quantizer parse(std::string_view text, std::size_t ell);

  std::size_t ell() const { return ell_; }
  std::size_t size() const { return q_.size(); }
  const std::vector<std::size_t>& elements() const { return q_; }
  // i_{k+1} - 1 for the k-th element (0-based), with i_{m+1} = ell + 1: the
  // highest level that H_{i_k} serves.
  std::size_t top_served(std::size_t k) const;
  // Index k of the largest element <= i.
  std::size_t block_of(std::size_t level) const;

  std::string to_string() const;
  friend bool operator==(const Quantizer&, const Quantizer&) = default;

 private:
  std::vector<std::size_t> q_;
  std::size_t ell_ = 0;
};

// Constants of the rounding analysis. Edges of H_{i_k} are charged at level
// r_k = i_{k+1} - 1, so with R = {r_1, ..., r_m}:
//   A = max_i g(r(i)) / g(i), r(i) the smallest element of R that is >= i,
//   B = max_k (sum_{j <= k} g(r_j)) / g(r_k).
struct QuantizerProfile {
  Rational A;
  Rational B;
};

QuantizerProfile quantizer_profile(const LevelCostFn& g, const Quantizer& q);

// sum_k g(i_{k+1} - 1) * mins[i_k - 1]: the cost bound of rounding with Q
// given single-level weights mins[0..ell-1].
Rational rounding_bound(const Quantizer& q, const LevelCostFn& g, std::span<const Rational> mins);

// Single-level sparsifier over a terminal set.
using LevelSolver = std::function<EdgeSet(const std::vector<VertexId>& terminals)>;

// Exact single-level solvers: solve_exact over T x T (spanner) or
// steiner_exact (Steiner tree).
LevelSolver oracle_solver(const Graph& g, const SparsifierKind& kind, ExactOptions options = {});
// subsetwise_spanner (spanner) or steiner_2approx (Steiner tree).
LevelSolver metric_closure_solver(const Graph& g, const SparsifierKind& kind);

// Lazily computed H_i = solver(T_i), at most once per level.
class LevelCache {
 public:
  LevelCache(const TerminalHierarchy& h, LevelSolver solver);
  const EdgeSet& get(std::size_t level);
  std::size_t solves() const { return solves_; }

 private:
  const TerminalHierarchy& h_;
  LevelSolver solver_;
  std::vector<std::optional<EdgeSet>> cache_;
  std::size_t solves_ = 0;
};

// Spanner kind: union. Steiner kind: union, then if cyclic a spanning forest
// that keeps every edge of s1 ahead of the others by (weight, id), then
// pruning of non-terminal leaves. When s1 is a tree whose leaves are
// terminals, the result contains s1.
EdgeSet merge(const Graph& g, const SparsifierKind& kind, const EdgeSet& s1, const EdgeSet& s2,
              std::span<const VertexId> terminals);

// Algorithm 1 with H_j taken from the cache. Merges run from the top
// element of Q downwards.
MultiLevelSolution round_mlags(const Graph& g, const TerminalHierarchy& h, const Quantizer& q,
                               const SparsifierKind& kind, LevelCache& cache);
MultiLevelSolution round_mlags(const Graph& g, const TerminalHierarchy& h, const Quantizer& q,
                               const SparsifierKind& kind, const LevelSolver& solver);

// Minimizer of sum_k g(i_{k+1} - 1) y_{i_k} over Q containing 1, as a
// shortest path over nodes 1..ell+1. gvals[i] = g(i) for i = 0..ell and
// y[i-1] = y_i. Ties prefer fewer elements, then the lexicographically
// smallest sequence.
template <class Num>
struct BestQ {
  std::vector<std::size_t> q;
  Num value;
};

template <class Num>
BestQ<Num> best_q(std::span<const Num> y, std::span<const Num> gvals) {
  const std::size_t ell = y.size();
  if (ell == 0) throw std::invalid_argument("best_q needs at least one level");
  if (gvals.size() != ell + 1) throw std::invalid_argument("best_q: g table size mismatch");
  for (const Num& v : y) {
    if (v < Num(0)) throw std::invalid_argument("best_q: negative level weight");
  }
  // Node i (1-based) to the sink ell + 1.
  std::vector<Num> value(ell + 2, Num(0));
  std::vector<std::size_t> count(ell + 2, 0), next(ell + 2, 0);
  for (std::size_t i = ell; i >= 1; --i) {
    bool have = false;
    for (std::size_t j = i + 1; j <= ell + 1; ++j) {
      Num c = gvals[j - 1] * y[i - 1] + value[j];
      std::size_t n = count[j] + 1;
      if (!have || c < value[i] || (c == value[i] && n < count[i])) {
        value[i] = c;
        count[i] = n;
        next[i] = j;
        have = true;
      }
    }
  }
  BestQ<Num> out{{}, value[1]};
  for (std::size_t i = 1; i <= ell; i = next[i]) out.q.push_back(i);
  return out;
}

BestQ<Rational> best_q(std::span<const Rational> y, const LevelCostFn& g);

enum class CompositeMode { kEnumerate, kMeasured };

inline constexpr std::size_t kCompositeEnumerateMaxLevels = 20;

struct CompositeResult {
  MultiLevelSolution solution;
  Quantizer q;
  Rational cost;
};

// Algorithm 2. Enumerate mode evaluates round_mlags for every Q containing 1
// (ell <= 20) and keeps the cheapest, preferring fewer elements and then the
// lexicographically smallest Q. Measured mode solves every level once and
// rounds with best_q on the measured weights.
CompositeResult composite(const Graph& g, const TerminalHierarchy& h, const SparsifierKind& kind,
                          const LevelCostFn& gfn, LevelCache& cache,
                          CompositeMode mode = CompositeMode::kEnumerate);

struct LevelStretch {
  bool ok = true;
  // max d_{E_j'}(u,v) / d_G(u,v) over level-j pairs; nullopt if some pair is cut.
  std::optional<Rational> stretch;
};

struct ClosureMultilevelResult {
  MultiLevelSolution solution;
  std::vector<LevelStretch> levels;  // levels[j-1] for level j
};

// Algorithm 4: subsetwise spanner over T_1, then each higher level keeps
// the shortest paths inside E_1' between its terminal pairs.
ClosureMultilevelResult ml_metric_closure_spanner(const Graph& g, const TerminalHierarchy& h,
                                                  const DistortionFn& f);

// y(e) for every edge id of g.
std::vector<int> grades_view(const Graph& g, const MultiLevelSolution& s);

// Checks nesting and per-level admissibility: stretch over T_i x T_i for
// spanners, connectivity and acyclicity for Steiner trees.
bool verify_solution(const Graph& g, const TerminalHierarchy& h, const SparsifierKind& kind,
                     const MultiLevelSolution& s, std::string* why = nullptr);

}  // namespace mlsparse
