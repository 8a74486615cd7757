#include <gtest/gtest.h>

#include <random>

#include "instances.h"
#include "mlsparse/error.h"
#include "mlsparse/multilevel.h"
#include "mlsparse/spanner.h"

using namespace mlsparse;
using namespace testing_support;

namespace {

// Nested hierarchy with |T_i| shrinking by one per level from `top` terminals.
TerminalHierarchy chain(const Graph& g, std::uint64_t seed, std::size_t size1, std::size_t ell) {
  auto t = random_subset(seed, g, size1);
  std::mt19937_64 rng(seed ^ 0x5a5a);
  std::vector<std::vector<VertexId>> sets{t};
  for (std::size_t i = 1; i < ell; ++i) {
    auto next = sets.back();
    if (next.size() > 2) next.erase(next.begin() + static_cast<std::ptrdiff_t>(rng() % next.size()));
    sets.push_back(next);
  }
  return TerminalHierarchy(sets);
}

}  // namespace

TEST(QuantizerTest, Presets) {
  EXPECT_EQ(Quantizer::bottom_up(5).elements(), (std::vector<std::size_t>{1, 5}));
  EXPECT_EQ(Quantizer::bottom_up(1).elements(), (std::vector<std::size_t>{1}));
  EXPECT_EQ(Quantizer::top_down(3).elements(), (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_EQ(Quantizer::powers_of_two(10).elements(), (std::vector<std::size_t>{1, 2, 4, 8}));
  EXPECT_EQ(Quantizer::parse("1,4,6", 6).elements(), (std::vector<std::size_t>{1, 4, 6}));
}

TEST(QuantizerTest, Validation) {
  EXPECT_THROW(Quantizer({2, 3}, 3), InputError);
  EXPECT_THROW(Quantizer({1, 4}, 3), InputError);
  EXPECT_THROW(Quantizer({1, 2, 2}, 3), InputError);
  EXPECT_THROW(Quantizer::parse("1,x", 3), InputError);
}

TEST(QuantizerTest, BlocksAndServedRanges) {
  Quantizer q({1, 4, 6}, 6);
  EXPECT_EQ(q.top_served(0), 3u);
  EXPECT_EQ(q.top_served(1), 5u);
  EXPECT_EQ(q.top_served(2), 6u);
  EXPECT_EQ(q.block_of(3), 0u);
  EXPECT_EQ(q.block_of(5), 1u);
  EXPECT_EQ(q.block_of(6), 2u);
}

TEST(QuantizerProfileTest, Examples) {
  auto lin = LevelCostFn::linear();
  auto p = quantizer_profile(lin, Quantizer::powers_of_two(8));
  // Charged grades R = {1, 3, 7, 8}.
  EXPECT_EQ(p.A, Rational(7, 4));
  EXPECT_EQ(p.B, Rational(19, 8));
  for (std::size_t ell = 1; ell <= 9; ++ell) {
    auto td = quantizer_profile(lin, Quantizer::top_down(ell));
    EXPECT_EQ(td.A, Rational(1));
    EXPECT_EQ(td.B, Rational(static_cast<std::int64_t>(ell) + 1, 2));
  }
  auto one = quantizer_profile(lin, Quantizer::top_down(1));
  EXPECT_EQ(one.A, Rational(1));
  EXPECT_EQ(one.B, Rational(1));
}

TEST(RoundingBound, HandValue) {
  std::vector<Rational> mins{Rational(1), Rational(2), Rational(3), Rational(5), Rational(8), Rational(13)};
  // g(3) MIN_1 + g(5) MIN_4 + g(6) MIN_6
  EXPECT_EQ(rounding_bound(Quantizer({1, 4, 6}, 6), LevelCostFn::linear(), mins), Rational(3 + 25 + 78));
}

TEST(Merge, Examples) {
  Graph p = path3();
  auto sp = SparsifierKind::spanner(DistortionFn());
  std::vector<VertexId> t{1, 2, 3};
  EXPECT_EQ(merge(p, sp, EdgeSet(p, {0}), EdgeSet(p, {1}), t).ids(), (std::vector<EdgeId>{0, 1}));

  Graph c = cycle4();
  std::vector<VertexId> t13{1, 3};
  EdgeSet s1(c, {*c.find_edge(1, 2), *c.find_edge(2, 3)});
  EdgeSet s2(c, {*c.find_edge(3, 4), *c.find_edge(1, 4)});
  EdgeSet m = merge(c, SparsifierKind::steiner(), s1, s2, t13);
  EXPECT_EQ(m.weight(), Rational(2));
  EXPECT_TRUE(connects(c, m, t13));
  EXPECT_TRUE(is_acyclic(c, m));
  EXPECT_EQ(m, s1);

  EXPECT_EQ(merge(c, SparsifierKind::steiner(), s1, EdgeSet(), t13), s1);
  EXPECT_EQ(merge(c, sp, s1, EdgeSet(), t13), s1);
}

TEST(RoundMlags, SixLevelStructure) {
  // Level i gets a solver answer that is a single distinct edge, so every
  // level of the rounded solution is an identifiable union.
  std::vector<Edge> es;
  for (VertexId v = 1; v <= 7; ++v) es.push_back({0, v, 1});
  Graph g = Graph::from_edges(es);
  std::vector<std::vector<VertexId>> sets;
  for (std::size_t i = 1; i <= 6; ++i) {
    std::vector<VertexId> t;
    for (VertexId v = static_cast<VertexId>(i); v <= 7; ++v) t.push_back(v);
    sets.push_back(t);
  }
  TerminalHierarchy h(sets);
  std::vector<std::size_t> asked;
  LevelSolver solver = [&](const std::vector<VertexId>& t) {
    asked.push_back(8 - t.size());
    return EdgeSet(g, {static_cast<EdgeId>(8 - t.size() - 1)});
  };
  auto s = round_mlags(g, h, Quantizer({1, 4, 6}, 6), SparsifierKind::spanner(DistortionFn()), solver);
  EXPECT_EQ(asked, (std::vector<std::size_t>{6, 4, 1}));
  EXPECT_EQ(s.level(6).ids(), (std::vector<EdgeId>{5}));
  EXPECT_EQ(s.level(5).ids(), (std::vector<EdgeId>{3, 5}));
  EXPECT_EQ(s.level(4).ids(), (std::vector<EdgeId>{3, 5}));
  for (std::size_t i = 1; i <= 3; ++i) EXPECT_EQ(s.level(i).ids(), (std::vector<EdgeId>{0, 3, 5}));
}

TEST(RoundMlags, SingleLevelIsOneSolve) {
  Graph g = random_connected(4, 8, 4);
  TerminalHierarchy h({random_subset(4, g, 4)});
  auto kind = SparsifierKind::spanner(DistortionFn::multiplicative(Rational(2)));
  LevelCache cache(h, oracle_solver(g, kind));
  auto s = round_mlags(g, h, Quantizer::top_down(1), kind, cache);
  EXPECT_EQ(cache.solves(), 1u);
  EXPECT_EQ(s.level(1), cache.get(1));
}

TEST(RoundMlags, Path3MatchesOptimum) {
  Graph g = path3();
  TerminalHierarchy h({{1, 2, 3}, {1, 3}});
  auto kind = SparsifierKind::spanner(DistortionFn());
  auto s = round_mlags(g, h, Quantizer::top_down(2), kind, oracle_solver(g, kind));
  EXPECT_EQ(s.cost(g, LevelCostFn::linear()), Rational(4));
  EXPECT_EQ(s.cost(g, LevelCostFn::linear()),
            brute_multilevel_cost(g, h, DistortionFn(), LevelCostFn::linear()));
}

TEST(RoundMlags, RejectsMismatchedEll) {
  Graph g = path3();
  TerminalHierarchy h({{1, 2, 3}, {1, 3}});
  auto kind = SparsifierKind::spanner(DistortionFn());
  EXPECT_THROW(round_mlags(g, h, Quantizer::top_down(3), kind, oracle_solver(g, kind)), InputError);
}

TEST(RoundMlags, WithinABTimesOptimumAndLevelMinimaBound) {
  auto gfn = LevelCostFn::linear();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Graph g = random_connected(seed, 7, 3);
    const std::size_t ell = 2 + seed % 2;
    TerminalHierarchy h = chain(g, seed, 5, ell);
    auto f = DistortionFn::multiplicative(seed % 3 ? Rational(7, 5) : Rational(2));
    auto kind = SparsifierKind::spanner(f);
    Rational opt = solve_exact_multilevel_search(g, h, kind, gfn).cost(g, gfn);
    LevelCache cache(h, oracle_solver(g, kind));
    std::vector<Rational> mins;
    for (std::size_t i = 1; i <= ell; ++i) mins.push_back(cache.get(i).weight());
    for (const auto& el : all_quantizers(ell)) {
      Quantizer q(el, ell);
      auto s = round_mlags(g, h, q, kind, cache);
      ASSERT_TRUE(verify_solution(g, h, kind, s));
      auto prof = quantizer_profile(gfn, q);
      const Rational c = s.cost(g, gfn);
      EXPECT_LE(c, prof.A * prof.B * opt) << seed << " " << q.to_string();
      EXPECT_LE(c, rounding_bound(q, gfn, mins)) << seed << " " << q.to_string();
      EXPECT_GE(c, opt);
    }
  }
}

TEST(RoundMlags, SteinerKindIsNestedTrees) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Graph g = random_connected(seed, 10, 6);
    TerminalHierarchy h = chain(g, seed, 6, 4);
    auto kind = SparsifierKind::steiner();
    for (auto solver : {oracle_solver(g, kind), metric_closure_solver(g, kind)}) {
      for (const auto& q : {Quantizer::bottom_up(4), Quantizer::top_down(4), Quantizer::powers_of_two(4)}) {
        auto s = round_mlags(g, h, q, kind, solver);
        std::string why;
        EXPECT_TRUE(verify_solution(g, h, kind, s, &why)) << why;
      }
    }
  }
}

TEST(BestQ, Examples) {
  std::vector<Rational> y{Rational(1), Rational(0), Rational(0)};
  auto r = best_q(std::span<const Rational>(y), LevelCostFn::linear());
  EXPECT_EQ(r.q, (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(r.value, Rational(1));
  std::vector<Rational> one{Rational(5, 2)};
  auto r1 = best_q(std::span<const Rational>(one), LevelCostFn::linear());
  EXPECT_EQ(r1.q, (std::vector<std::size_t>{1}));
  EXPECT_EQ(r1.value, Rational(5, 2));
}

TEST(BestQ, Errors) {
  std::vector<Rational> none;
  EXPECT_THROW(best_q(std::span<const Rational>(none), LevelCostFn::linear()), std::invalid_argument);
  std::vector<Rational> neg{Rational(1), Rational(-1)};
  EXPECT_THROW(best_q(std::span<const Rational>(neg), LevelCostFn::linear()), std::invalid_argument);
}

TEST(BestQ, MatchesEnumerationWithTieBreak) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t ell = 1 + rng() % 10;
    std::vector<Rational> y(ell), gv(ell + 1);
    // Small integers give many ties.
    for (auto& v : y) v = Rational(static_cast<std::int64_t>(rng() % 4));
    std::int64_t acc = 0;
    for (std::size_t i = 1; i <= ell; ++i) gv[i] = Rational(acc += 1 + static_cast<std::int64_t>(rng() % 3));
    auto got = best_q<Rational>(y, gv);
    std::optional<Rational> best;
    std::vector<std::size_t> best_set;
    for (const auto& q : all_quantizers(ell)) {
      Rational v = q_objective(q, y, gv);
      if (!best || v < *best || (v == *best && (q.size() < best_set.size() ||
                                               (q.size() == best_set.size() && q < best_set)))) {
        best = v;
        best_set = q;
      }
    }
    EXPECT_EQ(got.value, *best) << trial;
    EXPECT_EQ(got.q, best_set) << trial;
  }
}

TEST(Composite, TwoLevelsTriesBothSubsets) {
  Graph g = random_connected(3, 8, 5);
  TerminalHierarchy h = chain(g, 3, 5, 2);
  auto kind = SparsifierKind::spanner(DistortionFn::multiplicative(Rational(2)));
  auto gfn = LevelCostFn::linear();
  LevelCache cache(h, oracle_solver(g, kind));
  auto r = composite(g, h, kind, gfn, cache);
  EXPECT_EQ(cache.solves(), 2u);
  // With two levels bottom-up {1, ell} coincides with top-down.
  EXPECT_EQ(Quantizer::bottom_up(2), Quantizer::top_down(2));
  Rational coarse = round_mlags(g, h, Quantizer({1}, 2), kind, cache).cost(g, gfn);
  Rational td = round_mlags(g, h, Quantizer::top_down(2), kind, cache).cost(g, gfn);
  EXPECT_EQ(r.cost, std::min(coarse, td));
  EXPECT_TRUE(r.q == Quantizer({1}, 2) || r.q == Quantizer::top_down(2));
}

TEST(Composite, NoWorseThanAnyFixedQuantizerAndMeasuredModeIsValid) {
  auto gfn = LevelCostFn::linear();
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    Graph g = random_connected(seed, 9, 5);
    TerminalHierarchy h = chain(g, seed, 7, 4);
    auto kind = SparsifierKind::spanner(DistortionFn::multiplicative(Rational(6, 5)));
    LevelCache cache(h, oracle_solver(g, kind));
    auto r = composite(g, h, kind, gfn, cache);
    EXPECT_EQ(r.cost, r.solution.cost(g, gfn));
    for (const auto& el : all_quantizers(4)) {
      EXPECT_LE(r.cost, round_mlags(g, h, Quantizer(el, 4), kind, cache).cost(g, gfn));
    }
    auto m = composite(g, h, kind, gfn, cache, CompositeMode::kMeasured);
    EXPECT_TRUE(verify_solution(g, h, kind, m.solution));
    EXPECT_GE(m.cost, r.cost);
    std::vector<Rational> mins;
    for (std::size_t i = 1; i <= 4; ++i) mins.push_back(cache.get(i).weight());
    EXPECT_LE(m.cost, rounding_bound(m.q, gfn, mins));
    EXPECT_EQ(cache.solves(), 4u);
  }
}

TEST(MlMetricClosure, Path3) {
  Graph g = path3();
  TerminalHierarchy h({{1, 2, 3}, {1, 3}});
  auto r = ml_metric_closure_spanner(g, h, DistortionFn());
  EXPECT_EQ(r.solution.level(1).ids(), (std::vector<EdgeId>{0, 1}));
  EXPECT_EQ(r.solution.level(2).ids(), (std::vector<EdgeId>{0, 1}));
  EXPECT_TRUE(r.levels[1].ok);
}

TEST(MlMetricClosure, SingleLevelEqualsSubsetwiseSpanner) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Graph g = random_connected(seed, 10, 8);
    auto t = random_subset(seed, g, 5);
    auto f = DistortionFn::multiplicative(Rational(2));
    auto r = ml_metric_closure_spanner(g, TerminalHierarchy({t}), f);
    EXPECT_EQ(r.solution.level(1), subsetwise_spanner(g, t, f).edges);
  }
}

TEST(MlMetricClosure, NestedWithLevelWeightBound) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Graph g = random_connected(seed, 12, 10);
    TerminalHierarchy h = chain(g, seed, 8, 3);
    const Rational t(1 + static_cast<std::int64_t>(seed % 3));
    auto r = ml_metric_closure_spanner(g, h, DistortionFn::multiplicative(t));
    const Rational diam = diameter(g);
    for (std::size_t k = 1; k <= 3; ++k) {
      const auto n = static_cast<std::int64_t>(h.level(k).size());
      EXPECT_LE(r.solution.level(k).weight(), Rational(n * (n - 1) / 2) * t * diam);
      if (k > 1) EXPECT_TRUE(is_subset(r.solution.level(k), r.solution.level(k - 1)));
    }
    EXPECT_TRUE(r.levels[0].ok);
  }
}

TEST(GradesView, RoundTrips) {
  Graph g = random_connected(8, 9, 6);
  TerminalHierarchy h = chain(g, 8, 6, 3);
  auto kind = SparsifierKind::spanner(DistortionFn::multiplicative(Rational(2)));
  LevelCache cache(h, oracle_solver(g, kind));
  std::vector<MultiLevelSolution> sols{
      round_mlags(g, h, Quantizer::bottom_up(3), kind, cache),
      composite(g, h, kind, LevelCostFn::linear(), cache).solution,
      ml_metric_closure_spanner(g, h, kind.f).solution};
  for (const auto& s : sols) {
    auto y = grades_view(g, s);
    EXPECT_EQ(MultiLevelSolution::from_grades(g, y, 3), s);
    EXPECT_EQ(parse_solution(g, format_solution(g, s)), s);
    EXPECT_EQ(s.cost(g, LevelCostFn::linear()), s.level_sum_cost(LevelCostFn::linear()));
  }
}

TEST(VerifySolution, DetectsViolations) {
  Graph c = cycle4();
  TerminalHierarchy h({{1, 2, 3, 4}, {1, 3}});
  auto kind = SparsifierKind::spanner(DistortionFn());
  MultiLevelSolution s({EdgeSet(c, {0, 1, 2}), EdgeSet(c, {0, 1})});
  std::string why;
  EXPECT_FALSE(verify_solution(c, h, kind, s, &why));
  EXPECT_FALSE(why.empty());
  MultiLevelSolution ok({EdgeSet(c, {0, 1, 2, 3}), EdgeSet(c, {0, 1})});
  EXPECT_TRUE(verify_solution(c, h, kind, ok));
}

TEST(LevelCost, ParseAndValidate) {
  EXPECT_EQ(LevelCostFn::parse("linear")(3), Rational(3));
  EXPECT_EQ(LevelCostFn::parse("const:2")(5), Rational(2));
  EXPECT_EQ(LevelCostFn::parse("table:1,2,4")(3), Rational(4));
  EXPECT_EQ(LevelCostFn::parse("table:1,2,4").increment(3), Rational(2));
  EXPECT_THROW(LevelCostFn::parse("table:2,1"), InputError);
  EXPECT_THROW(LevelCostFn::parse("table:1,2").check_levels(3), InputError);
  EXPECT_THROW(LevelCostFn::parse("cubic"), InputError);
}

TEST(Terminals, ParseNestingAndErrors) {
  auto h = parse_terminals("1 2\n2 1\n3 2\n");
  EXPECT_EQ(h.num_levels(), 2u);
  EXPECT_EQ(h.level(1), (std::vector<VertexId>{1, 2, 3}));
  EXPECT_EQ(h.level(2), (std::vector<VertexId>{1, 3}));
  EXPECT_EQ(parse_terminals(format_terminals(h)).level(2), h.level(2));
  EXPECT_THROW(parse_terminals("1 0"), ParseError);
  EXPECT_THROW(parse_terminals("1 1\n1 2"), ParseError);
  EXPECT_THROW(TerminalHierarchy({{1, 2}, {3}}), InputError);
}
