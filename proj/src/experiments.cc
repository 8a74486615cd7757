#include "mlsparse/experiments.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "mlsparse/error.h"
#include "mlsparse/multilevel.h"

namespace mlsparse {

std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (std::uint64_t p : parts) {
    std::uint64_t z = h + p + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    h = z ^ (z >> 31);
  }
  return h;
}

std::uint64_t Rng::bounded(std::uint64_t n) {
  if (n == 0) throw InputError("Rng::bounded needs n >= 1");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  for (;;) {
    std::uint64_t x = engine_();
    if (x < limit) return x % n;
  }
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double er_probability(std::size_t n) { return 2.0 * std::log(static_cast<double>(n)) / static_cast<double>(n); }

Graph sample_er(std::size_t n, double p, Rng& rng) {
  std::vector<VertexId> vs(n);
  for (std::size_t i = 0; i < n; ++i) vs[i] = static_cast<VertexId>(i);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.uniform() < p) {
        edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(j),
                         Rational(static_cast<std::int64_t>(1 + rng.bounded(10)))});
      }
    }
  }
  return Graph(std::move(vs), std::move(edges));
}

Graph gen_er(std::size_t n, std::uint64_t seed) {
  if (n < 3) throw InputError("gen_er needs n >= 3");
  Rng rng(seed);
  const double p = er_probability(n);
  for (int attempt = 0; attempt < kErMaxAttempts; ++attempt) {
    Graph g = sample_er(n, p, rng);
    if (g.is_connected()) return g;
  }
  throw GuardError("no connected G(n, p) sample after " + std::to_string(kErMaxAttempts) + " attempts");
}

std::vector<std::size_t> terminal_sizes(std::size_t n, std::size_t ell) {
  std::vector<std::size_t> s;
  for (std::size_t i = 1; i <= ell; ++i) s.push_back(n * (ell - i + 1) / (ell + 1));
  return s;
}

TerminalHierarchy sample_terminals(const Graph& g, std::size_t ell, std::uint64_t seed) {
  if (ell == 0) throw InputError("sample_terminals needs ell >= 1");
  const auto sizes = terminal_sizes(g.num_vertices(), ell);
  if (sizes.back() < 2) {
    throw InputError("top terminal level would have " + std::to_string(sizes.back()) +
                     " vertices; need at least 2");
  }
  Rng rng(seed);
  std::vector<VertexId> pool = g.vertices();
  std::vector<std::vector<VertexId>> sets;
  for (std::size_t size : sizes) {
    // Partial Fisher-Yates: the first `size` entries become the sample.
    for (std::size_t k = 0; k < size; ++k) {
      std::size_t pick = k + static_cast<std::size_t>(rng.bounded(pool.size() - k));
      std::swap(pool[k], pool[pick]);
    }
    pool.resize(size);
    sets.push_back(pool);
  }
  return TerminalHierarchy(std::move(sets));
}

std::string to_string(Subroutine s) { return s == Subroutine::kOracle ? "oracle" : "metric-closure"; }

Subroutine parse_subroutine(std::string_view text) {
  if (text == "oracle") return Subroutine::kOracle;
  if (text == "metric-closure") return Subroutine::kMetricClosure;
  throw InputError("unknown subroutine '" + std::string(text) + "'");
}

// ---- run -----------------------------------------------------------------------

namespace {

struct Task {
  std::size_t n, ell, t_index, trial;
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<ResultRow> run_task(const ExperimentConfig& cfg, const Task& task) {
  const Rational t = cfg.stretch[task.t_index];
  const std::uint64_t gseed = mix_seed({cfg.seed, task.n, task.trial});
  const Graph g = gen_er(task.n, gseed);
  const TerminalHierarchy h = sample_terminals(g, task.ell, mix_seed({cfg.seed, task.n, task.trial, task.ell}));
  const SparsifierKind kind = SparsifierKind::spanner(DistortionFn::multiplicative(t));
  const LevelCostFn gfn = LevelCostFn::linear();
  ExactOptions oracle_opts;
  oracle_opts.max_edges = cfg.oracle_max_edges;

  std::vector<ResultRow> rows;
  for (Subroutine sub : cfg.subroutines) {
    ResultRow row;
    row.n = task.n;
    row.ell = task.ell;
    row.t = t;
    row.trial = task.trial;
    row.seed = gseed;
    row.subroutine = sub;
    LevelCache cache(h, sub == Subroutine::kOracle ? oracle_solver(g, kind, oracle_opts)
                                                  : metric_closure_solver(g, kind));
    auto start = Clock::now();
    row.cost_bu = round_mlags(g, h, Quantizer::bottom_up(task.ell), kind, cache).cost(g, gfn);
    const double ms_bu = ms_since(start);
    start = Clock::now();
    row.cost_td = round_mlags(g, h, Quantizer::top_down(task.ell), kind, cache).cost(g, gfn);
    const double ms_td = ms_since(start);
    start = Clock::now();
    row.cost_cmp = composite(g, h, kind, gfn, cache).cost;
    const double ms_cmp = ms_since(start);
    if (cfg.record_timings) {
      row.ms_bu = ms_bu;
      row.ms_td = ms_td;
      row.ms_cmp = ms_cmp;
    }
    rows.push_back(row);
  }

  Rational best_known = rows.front().cost_cmp;
  for (const auto& r : rows) best_known = std::min({best_known, r.cost_bu, r.cost_td, r.cost_cmp});
  if (cfg.mode == RatioMode::kExact) {
    MultilevelSearchOptions opts = cfg.search;
    opts.upper_bound = best_known;
    const auto start = Clock::now();
    const Rational opt = solve_exact_multilevel_search(g, h, kind, gfn, opts).cost(g, gfn);
    const double ms = ms_since(start);
    for (auto& r : rows) {
      r.baseline = opt;
      if (cfg.record_timings) r.ms_baseline = ms;
    }
  } else {
    for (auto& r : rows) r.baseline = std::min({r.cost_bu, r.cost_td, r.cost_cmp});
  }
  return rows;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.trials == 0) throw InputError("trials must be >= 1");
  if (cfg.subroutines.empty()) throw InputError("no subroutine selected");
  for (const auto& t : cfg.stretch) {
    if (t < Rational(1)) throw InputError("stretch values must be >= 1");
  }
  ExperimentResult result;
  std::vector<Task> tasks;
  auto ns = cfg.n, ells = cfg.ell;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  std::sort(ells.begin(), ells.end());
  ells.erase(std::unique(ells.begin(), ells.end()), ells.end());
  std::vector<std::size_t> t_order(cfg.stretch.size());
  for (std::size_t i = 0; i < t_order.size(); ++i) t_order[i] = i;
  std::stable_sort(t_order.begin(), t_order.end(),
                   [&](std::size_t a, std::size_t b) { return cfg.stretch[a] < cfg.stretch[b]; });
  for (std::size_t n : ns) {
    if (n < 3) throw InputError("n must be >= 3");
    for (std::size_t ell : ells) {
      if (ell == 0) throw InputError("ell must be >= 1");
      if (terminal_sizes(n, ell).back() < 2) {
        result.skipped.push_back("n=" + std::to_string(n) + " ell=" + std::to_string(ell));
        continue;
      }
      for (std::size_t ti : t_order) {
        for (std::size_t trial = 0; trial < cfg.trials; ++trial) tasks.push_back({n, ell, ti, trial});
      }
    }
  }

  std::vector<std::vector<ResultRow>> out(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        out[i] = run_task(cfg, tasks[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(cfg.jobs, tasks.size()));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (auto& rows : out) {
    for (auto& r : rows) result.rows.push_back(std::move(r));
  }
  return result;
}

// ---- CSV -----------------------------------------------------------------------

namespace {

std::string fmt_double(double x, const char* spec) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

std::string fmt_ratio(const Rational& r) { return fmt_double(r.to_double(), "%.9f"); }

std::string fmt_ms(const std::optional<double>& ms) { return ms ? fmt_double(*ms, "%.3f") : ""; }

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  cells.push_back(cur);
  return cells;
}

}  // namespace

std::string format_csv(const std::vector<ResultRow>& rows) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += r.generator + ',' + std::to_string(r.n) + ',' + std::to_string(r.ell) + ',' + r.t.to_string() + ',' +
           std::to_string(r.trial) + ',' + std::to_string(r.seed) + ',' + to_string(r.subroutine) + ',' +
           r.cost_bu.to_string() + ',' + r.cost_td.to_string() + ',' + r.cost_cmp.to_string() + ',' +
           r.baseline.to_string() + ',' + fmt_ratio(r.ratio_bu()) + ',' + fmt_ratio(r.ratio_td()) + ',' +
           fmt_ratio(r.ratio_cmp()) + ',' + fmt_ms(r.ms_bu) + ',' + fmt_ms(r.ms_td) + ',' + fmt_ms(r.ms_cmp) +
           ',' + fmt_ms(r.ms_baseline) + '\n';
  }
  return out;
}

std::vector<CsvRecord> parse_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::map<std::string, std::size_t> col;
  std::vector<CsvRecord> recs;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split_csv(line);
    if (col.empty()) {
      for (std::size_t i = 0; i < cells.size(); ++i) col[cells[i]] = i;
      for (const char* need : {"n", "ell", "t", "subroutine", "ratio_bu", "ratio_td", "ratio_cmp"}) {
        if (!col.count(need)) throw ParseError(lineno, std::string("missing column '") + need + "'");
      }
      continue;
    }
    if (cells.size() != col.size()) throw ParseError(lineno, "wrong number of fields");
    try {
      CsvRecord r;
      r.n = std::stoul(cells[col["n"]]);
      r.ell = std::stoul(cells[col["ell"]]);
      r.t = Rational::parse(cells[col["t"]]).to_double();
      r.subroutine = cells[col["subroutine"]];
      r.ratio_bu = std::stod(cells[col["ratio_bu"]]);
      r.ratio_td = std::stod(cells[col["ratio_td"]]);
      r.ratio_cmp = std::stod(cells[col["ratio_cmp"]]);
      recs.push_back(r);
    } catch (const std::logic_error&) {
      throw ParseError(lineno, "malformed numeric field");
    }
  }
  if (col.empty()) throw ParseError(lineno, "empty CSV");
  return recs;
}

}  // namespace mlsparse
