#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mlsparse/distortion.h"
#include "mlsparse/graph.h"
#include "mlsparse/rational.h"

namespace mlsparse {

// Nested terminal sets T_1 ⊇ T_2 ⊇ ... ⊇ T_ell. Levels are 1-based.
class TerminalHierarchy {
 public:
  TerminalHierarchy() = default;
  // sets[0] is T_1. Each set is sorted and deduplicated; nesting and a
  // nonempty top level are required.
  explicit TerminalHierarchy(std::vector<std::vector<VertexId>> sets);

  std::size_t num_levels() const { return sets_.size(); }
  const std::vector<VertexId>& level(std::size_t i) const { return sets_.at(i - 1); }
  // Highest level at which v is a terminal, 0 if none.
  std::size_t level_of(VertexId v) const;

  // Throws InputError if some terminal is not a vertex of g.
  void check_within(const Graph& g) const;

 private:
  std::vector<std::vector<VertexId>> sets_;
};

// Terminal file: lines "v level" (level = highest level of v).
TerminalHierarchy parse_terminals(std::string_view text);
TerminalHierarchy load_terminals(const std::string& path);
std::string format_terminals(const TerminalHierarchy& h);

// Level cost scaling g: {1..ell} -> positive reals, nondecreasing. The cost
// of an edge of weight w whose highest level is y is g(y) * w.
class LevelCostFn {
 public:
  enum class Kind { kLinear, kConstant, kTable };

  static LevelCostFn linear();
  static LevelCostFn constant(Rational c);
  static LevelCostFn table(std::vector<Rational> values);
  // "linear", "const:c", "table:1,2,4"
  static LevelCostFn parse(std::string_view text);

  Kind kind() const { return kind_; }
  // g(i) for i >= 1; g(0) = 0.
  Rational operator()(std::size_t i) const;
  // g(i) - g(i-1)
  Rational increment(std::size_t i) const { return (*this)(i) - (*this)(i - 1); }
  // Throws InputError if the function is undefined, nonpositive or decreasing
  // somewhere on 1..ell.
  void check_levels(std::size_t ell) const;

  std::string to_string() const;

 private:
  LevelCostFn() = default;
  Kind kind_ = Kind::kLinear;
  Rational constant_ = 1;
  std::vector<Rational> table_;
};

// Admissible sparsifier type for a single level.
struct SparsifierKind {
  enum class Type { kSpanner, kSteiner };
  Type type = Type::kSpanner;
  DistortionFn f;

  static SparsifierKind spanner(DistortionFn f) { return {Type::kSpanner, std::move(f)}; }
  static SparsifierKind steiner() { return {Type::kSteiner, DistortionFn()}; }
  bool is_spanner() const { return type == Type::kSpanner; }
};

// Nested edge sets E_1 ⊇ ... ⊇ E_ell over a parent graph.
class MultiLevelSolution {
 public:
  MultiLevelSolution() = default;
  // levels[0] is E_1; throws InputError unless nested.
  explicit MultiLevelSolution(std::vector<EdgeSet> levels);
  // grades[e] in 0..ell for every edge of g.
  static MultiLevelSolution from_grades(const Graph& g, std::span<const int> grades, std::size_t ell);

  std::size_t num_levels() const { return levels_.size(); }
  const EdgeSet& level(std::size_t i) const { return levels_.at(i - 1); }
  const std::vector<EdgeSet>& levels() const { return levels_; }

  // Grade of service y(e) = highest level containing e, 0 if absent.
  std::vector<int> grades(const Graph& g) const;

  // Sum over edges of g(y(e)) w(e).
  Rational cost(const Graph& g, const LevelCostFn& gfn) const;
  // Same quantity summed by level: sum_i (g(i) - g(i-1)) W(E_i).
  Rational level_sum_cost(const LevelCostFn& gfn) const;

  friend bool operator==(const MultiLevelSolution& a, const MultiLevelSolution& b) {
    return a.levels_ == b.levels_;
  }

 private:
  std::vector<EdgeSet> levels_;
};

// One line per graph edge "u v y", preceded by "# levels <ell>".
std::string format_solution(const Graph& g, const MultiLevelSolution& s);
MultiLevelSolution parse_solution(const Graph& g, std::string_view text);

}  // namespace mlsparse
