#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mlsparse/distortion.h"
#include "mlsparse/graph.h"
#include "mlsparse/levels.h"

namespace mlsparse {

// Unordered vertex pairs, stored (u, v) with u < v, sorted, no repeats.
class PairSet {
 public:
  PairSet() = default;
  explicit PairSet(std::vector<std::pair<VertexId, VertexId>> pairs);
  // Every pair of distinct vertices of `vertices`.
  static PairSet all_pairs(std::span<const VertexId> vertices);

  const std::vector<std::pair<VertexId, VertexId>>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }

 private:
  std::vector<std::pair<VertexId, VertexId>> pairs_;
};

// Feasibility test of edge subsets (given as 64-bit masks over edge ids) for
// one single-level requirement: either every pair meets its distortion
// budget, or a terminal set is connected. Weights are rescaled to a common
// integer denominator so every comparison is exact.
class SubsetChecker {
 public:
  static constexpr std::size_t kMaxEdges = 64;

  SubsetChecker(const Graph& g, const PairSet& pairs, const DistortionFn& f);
  SubsetChecker(const Graph& g, std::span<const VertexId> terminals);  // connectivity

  bool feasible(std::uint64_t mask) const;
  std::uint64_t full_mask() const { return full_; }
  std::int64_t scaled_weight(EdgeId e) const { return weight_[e]; }
  std::int64_t mask_weight(std::uint64_t mask) const;
  // Common denominator of all edge weights.
  std::int64_t scale() const { return scale_; }

 private:
  void init_graph(const Graph& g);
  bool spanner_feasible(std::uint64_t mask) const;
  bool connectivity_feasible(std::uint64_t mask) const;

  std::size_t n_ = 0;
  std::uint64_t full_ = 0;
  std::int64_t scale_ = 1;
  std::vector<std::int64_t> weight_;
  std::vector<std::pair<std::size_t, std::size_t>> ends_;
  // Per vertex: (neighbour, edge) arcs.
  std::vector<std::vector<std::pair<std::size_t, EdgeId>>> arcs_;
  // Spanner mode: per source, the (target, scaled budget) list.
  std::vector<std::pair<std::size_t, std::vector<std::pair<std::size_t, std::int64_t>>>> sources_;
  // Connectivity mode.
  std::vector<std::size_t> terminals_;
  bool connectivity_ = false;
};

// ---- ILP model ---------------------------------------------------------------

struct LinearTerm {
  std::size_t var;
  Rational coef;
};

struct LinearConstraint {
  enum class Sense { kLe, kEq };
  std::string name;
  std::vector<LinearTerm> terms;
  Sense sense = Sense::kLe;
  Rational rhs;
};

// Flow-based pairwise spanner ILP: one selection variable x_e per edge and
// one arc variable per pair and direction of every edge. All variables are
// binary.
struct ILPModel {
  std::vector<std::string> var_names;
  std::vector<Rational> objective;  // same length as var_names
  std::vector<LinearConstraint> constraints;
  std::size_t num_edge_vars = 0;

  // Counts per constraint family: budget, flow, out-degree, linking.
  std::size_t num_budget = 0, num_flow = 0, num_outdeg = 0, num_link = 0;
};

// Throws InputError for an empty pair set or when f(d) < d for some pair.
ILPModel build_ilp(const Graph& g, const PairSet& pairs, const DistortionFn& f,
                   bool count_edges = false);

// CPLEX LP text. Output depends only on the model (stable order).
std::string format_lp(const ILPModel& m);
void export_lp(const ILPModel& m, const std::string& path);

// ---- exact solvers -------------------------------------------------------------

inline constexpr std::size_t kSolveExactMaxEdges = 24;

struct ExactOptions {
  std::size_t max_edges = kSolveExactMaxEdges;
  // Minimize the number of edges instead of their weight.
  bool count_edges = false;
};

// Minimum-weight edge set under which every pair (u, v) satisfies
// d(u, v) <= f(d_G(u, v)). Branch and bound over edges; among optima returns
// the lexicographically smallest sorted id list. Throws GuardError above
// options.max_edges.
EdgeSet solve_exact(const Graph& g, const PairSet& pairs, const DistortionFn& f,
                    ExactOptions options = {});

// Same search for a connectivity requirement (minimum Steiner subgraph).
EdgeSet solve_exact_connect(const Graph& g, std::span<const VertexId> terminals,
                            ExactOptions options = {});

inline constexpr std::uint64_t kMultilevelEnumerationGuard = 2'000'000;

// Optimal multi-level solution by enumerating all grade assignments
// y: E -> {0..ell}. Throws GuardError when (ell+1)^|E| exceeds the guard.
MultiLevelSolution solve_exact_multilevel(const Graph& g, const TerminalHierarchy& h,
                                          const SparsifierKind& kind, const LevelCostFn& gfn);

struct MultilevelSearchOptions {
  std::size_t max_edges = 40;
  // Abort with GuardError after this many search nodes.
  std::uint64_t node_limit = 200'000'000;
  // Known feasible cost to start pruning from.
  std::optional<Rational> upper_bound;
};

// Optimal multi-level solution by level-by-level branch and bound, top
// level first. Each level extends the one above by an inclusion-minimal
// feasible superset; the bound uses exact single-level minima.
MultiLevelSolution solve_exact_multilevel_search(const Graph& g, const TerminalHierarchy& h,
                                                 const SparsifierKind& kind,
                                                 const LevelCostFn& gfn,
                                                 MultilevelSearchOptions options = {});

}  // namespace mlsparse
