#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mlsparse/distortion.h"
#include "mlsparse/exact_oracle.h"
#include "mlsparse/graph.h"

namespace mlsparse {

// Greedy t-spanner: edges in (weight, id) order, each kept iff the current
// spanner distance between its endpoints exceeds t * w. Throws InputError for
// t < 1.
EdgeSet greedy_spanner(const Graph& g, const Rational& t);

struct StretchReport {
  bool ok = true;
  std::pair<VertexId, VertexId> worst_pair{0, 0};
  // max over pairs of d_{E'}(u,v) / f(d_G(u,v)); nullopt when some pair is
  // disconnected in E' (infinite ratio).
  std::optional<Rational> worst_ratio = Rational(0);
};

// Checks d_{E'}(u,v) <= f(d_G(u,v)) for every pair.
StretchReport check_stretch(const Graph& g, const EdgeSet& edges, const PairSet& pairs,
                            const DistortionFn& f);

// Largest d_{E'}(u,v) / d_G(u,v) over the pairs; nullopt if some pair is cut.
std::optional<Rational> max_stretch(const Graph& g, const EdgeSet& edges, const PairSet& pairs);

struct SubsetSpanner {
  EdgeSet edges;
  std::vector<VertexId> terminals;
  DistortionFn f;
  // max d_{E'}(u,v) / d_G(u,v) over terminal pairs (1 when |T| <= 1).
  Rational achieved_stretch = 1;
};

// Edges of the closure spanner are found by greedy_spanner for
// multiplicative f and by solve_exact on the closure otherwise.
inline constexpr std::size_t kClosureOracleMaxTerminals = 10;

// Spanner of the metric closure over T expanded back to G. The result is
// verified with check_stretch; a failure throws InternalError.
SubsetSpanner subsetwise_spanner(const Graph& g, std::span<const VertexId> terminals,
                                 const DistortionFn& f);

}  // namespace mlsparse
