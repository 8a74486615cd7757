#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "instances.h"
#include "mlsparse/error.h"
#include "mlsparse/experiments.h"
#include "mlsparse/io.h"
#include "mlsparse/plot.h"

using namespace mlsparse;
using namespace testing_support;

namespace {

std::string golden(const std::string& name) { return read_file(std::string(MLSPARSE_GOLDEN_DIR) + "/" + name); }

ExperimentConfig smoke() {
  ExperimentConfig cfg;
  cfg.n = {8};
  cfg.ell = {2};
  cfg.stretch = {Rational(2)};
  cfg.trials = 1;
  cfg.subroutines = {Subroutine::kOracle};
  return cfg;
}

}  // namespace

TEST(Seeds, MixIsDeterministicAndOrderSensitive) {
  EXPECT_EQ(mix_seed({1, 2, 3}), mix_seed({1, 2, 3}));
  EXPECT_NE(mix_seed({1, 2, 3}), mix_seed({3, 2, 1}));
  EXPECT_NE(mix_seed({1}), mix_seed({1, 0}));
}

TEST(RngTest, BoundedAndUniformRanges) {
  Rng r(5);
  std::vector<int> hist(7, 0);
  for (int i = 0; i < 7000; ++i) ++hist[r.bounded(7)];
  for (int c : hist) EXPECT_GT(c, 800);
  for (int i = 0; i < 1000; ++i) {
    double u = r.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(GenEr, DeterministicAndConnected) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Graph a = gen_er(12, seed), b = gen_er(12, seed);
    EXPECT_EQ(format_graph(a), format_graph(b));
    EXPECT_TRUE(a.is_connected());
    EXPECT_EQ(a.num_vertices(), 12u);
    for (const auto& e : a.edges()) {
      EXPECT_TRUE(e.w.is_integer());
      EXPECT_GE(e.w, Rational(1));
      EXPECT_LE(e.w, Rational(10));
    }
  }
  EXPECT_NEAR(er_probability(3), 2 * std::log(3.0) / 3, 1e-15);
  EXPECT_TRUE(gen_er(3, 9).is_connected());
  EXPECT_THROW(gen_er(2, 1), InputError);
}

TEST(GenEr, EdgeCountDistribution) {
  const std::size_t n = 100;
  const int samples = 1000;
  const double p = er_probability(n);
  const double pairs = n * (n - 1) / 2.0;
  const double mean = pairs * p, sd = std::sqrt(pairs * p * (1 - p));
  double total = 0;
  for (int s = 0; s < samples; ++s) {
    Rng rng(mix_seed({77, static_cast<std::uint64_t>(s)}));
    const double m = static_cast<double>(sample_er(n, p, rng).num_edges());
    EXPECT_LT(std::abs(m - mean), 5 * sd);
    total += m;
  }
  EXPECT_LT(std::abs(total / samples - mean), 3 * sd / std::sqrt(static_cast<double>(samples)));
}

TEST(Terminals, SizesAndNesting) {
  EXPECT_EQ(terminal_sizes(12, 3), (std::vector<std::size_t>{9, 6, 3}));
  EXPECT_EQ(terminal_sizes(9, 1), (std::vector<std::size_t>{4}));
  Graph g = gen_er(12, 4);
  auto h = sample_terminals(g, 3, 11);
  EXPECT_EQ(h.level(1).size(), 9u);
  EXPECT_EQ(h.level(2).size(), 6u);
  EXPECT_EQ(h.level(3).size(), 3u);
  EXPECT_EQ(format_terminals(h), format_terminals(sample_terminals(g, 3, 11)));
  EXPECT_THROW(sample_terminals(gen_er(6, 1), 3, 1), InputError);
}

TEST(Terminals, SamplingIsUniform) {
  Graph g = gen_er(10, 1);
  std::vector<int> top(10, 0);
  for (std::uint64_t s = 0; s < 4000; ++s) {
    auto h = sample_terminals(g, 1, s);
    for (VertexId v : h.level(1)) ++top[static_cast<std::size_t>(v)];
  }
  // Each vertex is in T_1 (size 5) with probability 1/2.
  for (int c : top) EXPECT_NEAR(c, 2000, 200);
}

TEST(RunExperiment, SmokeConfig) {
  auto res = run_experiment(smoke());
  ASSERT_EQ(res.rows.size(), 1u);
  const auto& row = res.rows[0];
  EXPECT_GE(row.ratio_bu(), Rational(1));
  EXPECT_GE(row.ratio_td(), Rational(1));
  EXPECT_GE(row.ratio_cmp(), Rational(1));
  EXPECT_LE(row.cost_cmp, std::min(row.cost_bu, row.cost_td));
  EXPECT_FALSE(row.ms_bu.has_value());
}

TEST(RunExperiment, RatiosRespectCaps) {
  ExperimentConfig cfg;
  cfg.trials = 1;
  cfg.subroutines = {Subroutine::kOracle};
  auto res = run_experiment(cfg);
  EXPECT_FALSE(res.rows.empty());
  for (const auto& r : res.rows) {
    const auto l = static_cast<std::int64_t>(r.ell);
    EXPECT_LE(r.ratio_td(), Rational(l + 1, 2));
    EXPECT_LE(r.ratio_bu(), Rational(l));
    EXPECT_LE(r.ratio_cmp(), Rational(4));
    EXPECT_LE(r.cost_cmp, std::min(r.cost_bu, r.cost_td));
  }
}

TEST(RunExperiment, SkipsDegenerateCells) {
  ExperimentConfig cfg = smoke();
  cfg.n = {6};
  cfg.ell = {3};
  auto res = run_experiment(cfg);
  EXPECT_TRUE(res.rows.empty());
  EXPECT_EQ(res.skipped.size(), 1u);
}

TEST(RunExperiment, OutputIndependentOfJobs) {
  ExperimentConfig cfg;
  cfg.trials = 2;
  cfg.stretch = {Rational(7, 5), Rational(4)};
  std::string one = format_csv(run_experiment(cfg).rows);
  cfg.jobs = 3;
  EXPECT_EQ(format_csv(run_experiment(cfg).rows), one);
}

TEST(RunExperiment, RelativeModeBaselineIsBestStrategy) {
  ExperimentConfig cfg = smoke();
  cfg.mode = RatioMode::kRelative;
  cfg.subroutines = {Subroutine::kMetricClosure};
  auto res = run_experiment(cfg);
  ASSERT_EQ(res.rows.size(), 1u);
  const auto& r = res.rows[0];
  EXPECT_EQ(r.baseline, std::min({r.cost_bu, r.cost_td, r.cost_cmp}));
  EXPECT_EQ(r.ratio_cmp(), Rational(1));
}

TEST(Csv, HeaderFormatAndParse) {
  auto rows = run_experiment(smoke()).rows;
  std::string text = format_csv(rows);
  EXPECT_EQ(text.substr(0, text.find('\n')), kCsvHeader);
  auto recs = parse_csv(text);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].n, 8u);
  EXPECT_EQ(recs[0].subroutine, "oracle");
  EXPECT_NEAR(recs[0].ratio_cmp, rows[0].ratio_cmp().to_double(), 1e-9);
  EXPECT_THROW(parse_csv("a,b\n1,2\n"), ParseError);
  EXPECT_THROW(parse_csv(std::string(kCsvHeader) + "\ner,x\n"), ParseError);
}

TEST(Plot, BoxStatsQuartiles) {
  auto b = box_stats({5, 1, 4, 2, 3});
  EXPECT_DOUBLE_EQ(b.min, 1);
  EXPECT_DOUBLE_EQ(b.q1, 2);
  EXPECT_DOUBLE_EQ(b.median, 3);
  EXPECT_DOUBLE_EQ(b.q3, 4);
  EXPECT_DOUBLE_EQ(b.max, 5);
  auto c = box_stats({1, 2, 3, 4});
  EXPECT_DOUBLE_EQ(c.q1, 1.75);
  EXPECT_DOUBLE_EQ(c.median, 2.5);
  EXPECT_THROW(box_stats({}), InputError);
}

TEST(Plot, OneBoxPerSeriesAndGroup) {
  auto recs = parse_csv(golden("three_rows.csv"));
  std::string svg = plot_svg(recs, PlotOptions{});
  std::size_t boxes = 0;
  for (auto p = svg.find("class=\"box\""); p != std::string::npos; p = svg.find("class=\"box\"", p + 1)) ++boxes;
  std::set<std::size_t> ells;
  for (const auto& r : recs) ells.insert(r.ell);
  EXPECT_EQ(boxes, 3 * ells.size());
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(Plot, GoldenFiles) {
  auto recs = parse_csv(golden("three_rows.csv"));
  EXPECT_EQ(plot_svg(recs, PlotOptions{}), golden("three_rows_box_ell.svg"));
  PlotOptions line{PlotKind::kLine, GroupBy::kN, "", "means"};
  EXPECT_EQ(plot_svg(recs, line), golden("three_rows_line_n.svg"));
}

TEST(Plot, Errors) {
  auto recs = parse_csv(golden("three_rows.csv"));
  PlotOptions none;
  none.subroutine = "nothing";
  EXPECT_THROW(plot_svg(recs, none), InputError);
  EXPECT_THROW(parse_plot_kind("pie"), InputError);
  EXPECT_THROW(parse_group_by("color"), InputError);
}
