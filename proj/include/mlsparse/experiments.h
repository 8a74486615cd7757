#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "mlsparse/exact_oracle.h"
#include "mlsparse/graph.h"
#include "mlsparse/levels.h"

namespace mlsparse {

// splitmix64 finalizer chained over the inputs.
std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts);

// std::mt19937_64 (its output sequence is fixed by the C++ standard) with
// portable bounded-integer and unit-interval draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  // Uniform on 0..n-1 by rejection, n >= 1.
  std::uint64_t bounded(std::uint64_t n);
  // Uniform on [0, 1) with 53 random bits.
  double uniform();

 private:
  std::mt19937_64 engine_;
};

// 2 ln n / n
double er_probability(std::size_t n);

// One G(n, p) draw on vertices 0..n-1 with weights uniform on 1..10; may be
// disconnected.
Graph sample_er(std::size_t n, double p, Rng& rng);

inline constexpr int kErMaxAttempts = 100;

// Connected G(n, 2 ln n / n) sample: redraws until connected. Throws
// InputError for n < 3 and GuardError after kErMaxAttempts failures.
Graph gen_er(std::size_t n, std::uint64_t seed);

// |T_i| = floor(n (ell - i + 1) / (ell + 1)) for i = 1..ell.
std::vector<std::size_t> terminal_sizes(std::size_t n, std::size_t ell);

// Uniform nested sampling: T_1 from V, then each T_i from T_{i-1}, without
// replacement. Throws InputError when |T_ell| < 2.
TerminalHierarchy sample_terminals(const Graph& g, std::size_t ell, std::uint64_t seed);

enum class Subroutine { kOracle, kMetricClosure };
enum class RatioMode { kExact, kRelative };

std::string to_string(Subroutine s);
Subroutine parse_subroutine(std::string_view text);

struct ExperimentConfig {
  std::vector<std::size_t> n{6, 8, 10};
  std::vector<std::size_t> ell{2, 3};
  std::vector<Rational> stretch{Rational(6, 5), Rational(7, 5), Rational(2), Rational(4)};
  std::size_t trials = 3;
  std::uint64_t seed = 1;
  std::vector<Subroutine> subroutines{Subroutine::kOracle, Subroutine::kMetricClosure};
  RatioMode mode = RatioMode::kExact;
  std::size_t jobs = 1;
  // Wall-clock columns are left empty unless set, so output bytes depend on
  // the configuration only.
  bool record_timings = false;
  // Edge guard of the single-level oracle.
  std::size_t oracle_max_edges = 40;
  MultilevelSearchOptions search;
};

struct ResultRow {
  std::string generator = "er";
  std::size_t n = 0;
  std::size_t ell = 0;
  Rational t;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  Subroutine subroutine = Subroutine::kOracle;
  Rational cost_bu, cost_td, cost_cmp, baseline;
  std::optional<double> ms_bu, ms_td, ms_cmp, ms_baseline;

  Rational ratio_bu() const { return cost_bu / baseline; }
  Rational ratio_td() const { return cost_td / baseline; }
  Rational ratio_cmp() const { return cost_cmp / baseline; }
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  // Cells skipped because the terminal hierarchy would be degenerate.
  std::vector<std::string> skipped;
};

// Rows sorted by (n, ell, t, trial, subroutine) regardless of jobs.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

inline constexpr std::string_view kCsvHeader =
    "generator,n,ell,t,trial,seed,subroutine,cost_bu,cost_td,cost_cmp,baseline,ratio_bu,ratio_td,"
    "ratio_cmp,ms_bu,ms_td,ms_cmp,ms_baseline";

std::string format_csv(const std::vector<ResultRow>& rows);

// Numeric view of a results CSV, as used by the plotter.
struct CsvRecord {
  std::size_t n = 0;
  std::size_t ell = 0;
  double t = 0;
  std::string subroutine;
  double ratio_bu = 0, ratio_td = 0, ratio_cmp = 0;
};

// Throws ParseError on a bad header or malformed row.
std::vector<CsvRecord> parse_csv(std::string_view text);

}  // namespace mlsparse
