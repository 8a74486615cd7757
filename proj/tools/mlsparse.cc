// mlsparse: command-line front end.
//
// Exit codes: 0 success, 1 computation or input-data error, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mlsparse/error.h"
#include "mlsparse/exact_oracle.h"
#include "mlsparse/experiments.h"
#include "mlsparse/graph.h"
#include "mlsparse/io.h"
#include "mlsparse/levels.h"
#include "mlsparse/multilevel.h"
#include "mlsparse/plot.h"
#include "mlsparse/ratio_analysis.h"
#include "mlsparse/spanner.h"

using namespace mlsparse;
using json = nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parses option text with a library parser, reporting failures as usage errors.
template <class F>
auto parse_opt(const std::string& flag, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const std::exception& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

std::vector<VertexId> parse_id_list(const std::string& flag, const std::string& text) {
  return parse_opt(flag, [&] {
    std::vector<VertexId> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      std::size_t used = 0;
      long long v = std::stoll(tok, &used);
      if (used != tok.size()) throw InputError("bad vertex '" + tok + "'");
      out.push_back(v);
    }
    if (out.empty()) throw InputError("empty vertex list");
    return out;
  });
}

std::string edge_list(const Graph& g, const EdgeSet& s) {
  std::string out;
  for (EdgeId e : s.ids()) {
    if (!out.empty()) out += ',';
    out += std::to_string(g.edge(e).u) + "-" + std::to_string(g.edge(e).v);
  }
  return out;
}

json edges_json(const Graph& g, const EdgeSet& s) {
  json arr = json::array();
  for (EdgeId e : s.ids()) arr.push_back({g.edge(e).u, g.edge(e).v, g.edge(e).w.to_string()});
  return arr;
}

Graph read_graph(const std::string& path) {
  std::vector<std::string> warnings;
  Graph g = load_graph(path, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  return g;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
  } else {
    write_file_atomic(out_path, content);
  }
}

struct Common {
  bool json_out = false;
};

// ---- subcommands ---------------------------------------------------------------

struct GenArgs {
  std::size_t n = 8;
  std::uint64_t seed = 1;
  std::string out, levels_out;
  std::size_t ell = 0;
};

int run_gen(const GenArgs& a, const Common& c) {
  Graph g = gen_er(a.n, a.seed);
  emit(a.out, format_graph(g));
  json j{{"schema_version", kSchemaVersion}, {"command", "gen"}, {"n", a.n}, {"seed", a.seed},
         {"edges", g.num_edges()}, {"weight", g.total_weight().to_string()}};
  if (a.ell > 0) {
    auto h = sample_terminals(g, a.ell, mix_seed({a.seed, a.ell}));
    if (a.levels_out.empty()) throw UsageError("--ell needs --levels-out");
    write_file_atomic(a.levels_out, format_terminals(h));
    j["ell"] = a.ell;
  }
  if (c.json_out) std::cout << j.dump(2) << "\n";
  return 0;
}

struct TerminalArgs {
  std::string list;
  std::string file;
  std::size_t level = 1;

  std::vector<VertexId> get() const {
    if (!list.empty() && !file.empty()) throw UsageError("give either --terminals or --levels, not both");
    if (!list.empty()) return parse_id_list("--terminals", list);
    if (file.empty()) throw UsageError("a terminal set is required (--terminals or --levels)");
    return load_terminals(file).level(level);
  }
  void add(CLI::App* app) {
    app->add_option("--terminals", list, "Comma-separated terminal ids");
    app->add_option("--levels", file, "Terminal file ('v level' lines)");
    app->add_option("--level", level, "Level of the terminal file to use")->check(CLI::PositiveNumber);
  }
};

struct ClosureArgs {
  std::string graph;
  TerminalArgs t;
  std::string out;
};

int run_closure(const ClosureArgs& a, const Common& c) {
  Graph g = read_graph(a.graph);
  auto terms = a.t.get();
  ClosureGraph cl = metric_closure(g, terms);
  std::string text;
  json arr = json::array();
  for (EdgeId e = 0; e < cl.graph.num_edges(); ++e) {
    const auto& ed = cl.graph.edge(e);
    std::string path;
    for (EdgeId pe : cl.paths[e]) {
      path += (path.empty() ? "" : ",") + std::to_string(g.edge(pe).u) + "-" + std::to_string(g.edge(pe).v);
    }
    text += std::to_string(ed.u) + " " + std::to_string(ed.v) + " " + ed.w.to_string() + " " + path + "\n";
    arr.push_back({{"u", ed.u}, {"v", ed.v}, {"w", ed.w.to_string()}, {"path", path}});
  }
  if (c.json_out) {
    std::cout << json{{"schema_version", kSchemaVersion}, {"command", "closure"}, {"edges", arr}}.dump(2) << "\n";
    if (!a.out.empty()) write_file_atomic(a.out, text);
  } else {
    emit(a.out, text);
  }
  return 0;
}

struct SpannerArgs {
  std::string graph;
  TerminalArgs t;
  std::string f = "x2";
  std::string greedy;
  std::string out;
};

int run_spanner(const SpannerArgs& a, const Common& c) {
  Graph g = read_graph(a.graph);
  EdgeSet s;
  json j{{"schema_version", kSchemaVersion}, {"command", "spanner"}};
  if (!a.greedy.empty()) {
    Rational t = parse_opt("--greedy", [&] { return Rational::parse(a.greedy); });
    require_connected(g, "greedy spanner");
    s = greedy_spanner(g, t);
    j["mode"] = "greedy";
    j["t"] = t.to_string();
  } else {
    DistortionFn f = parse_opt("--f", [&] { return DistortionFn::parse(a.f); });
    require_connected(g, "subsetwise spanner");
    auto res = subsetwise_spanner(g, a.t.get(), f);
    s = res.edges;
    j["mode"] = "subsetwise";
    j["f"] = f.to_string();
    j["stretch"] = res.achieved_stretch.to_string();
  }
  j["edges"] = edges_json(g, s);
  j["weight"] = s.weight().to_string();
  if (!a.out.empty()) {
    std::string text;
    for (EdgeId e : s.ids()) text += std::to_string(g.edge(e).u) + " " + std::to_string(g.edge(e).v) + " " + g.edge(e).w.to_string() + "\n";
    write_file_atomic(a.out, text);
  }
  if (c.json_out) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "edges: " << edge_list(g, s) << "\nweight: " << s.weight() << "\n";
    if (j.contains("stretch")) std::cout << "stretch: " << j["stretch"].get<std::string>() << "\n";
  }
  return 0;
}

struct SteinerArgs {
  std::string graph;
  TerminalArgs t;
  bool exact = false;
};

int run_steiner(const SteinerArgs& a, const Common& c) {
  Graph g = read_graph(a.graph);
  require_connected(g, "steiner");
  auto terms = a.t.get();
  EdgeSet s = a.exact ? steiner_exact(g, terms) : steiner_2approx(g, terms);
  if (c.json_out) {
    std::cout << json{{"schema_version", kSchemaVersion}, {"command", "steiner"}, {"exact", a.exact},
                      {"edges", edges_json(g, s)}, {"weight", s.weight().to_string()}}.dump(2)
              << "\n";
  } else {
    std::cout << "edges: " << edge_list(g, s) << "\nweight: " << s.weight() << "\n";
  }
  return 0;
}

struct PairArgs {
  std::vector<std::string> pairs;
  std::string all_pairs;

  PairSet get() const {
    if (!pairs.empty() && !all_pairs.empty()) throw UsageError("give either --pairs or --all-pairs");
    if (!all_pairs.empty()) return PairSet::all_pairs(parse_id_list("--all-pairs", all_pairs));
    if (pairs.empty()) throw UsageError("a pair set is required (--pairs u,v or --all-pairs list)");
    std::vector<std::pair<VertexId, VertexId>> p;
    for (const auto& s : pairs) {
      auto ids = parse_id_list("--pairs", s);
      if (ids.size() != 2) throw UsageError("--pairs expects u,v");
      p.emplace_back(ids[0], ids[1]);
    }
    return parse_opt("--pairs", [&] { return PairSet(std::move(p)); });
  }
  void add(CLI::App* app) {
    app->add_option("--pairs", pairs, "Vertex pair u,v (repeatable)");
    app->add_option("--all-pairs", all_pairs, "All pairs of a comma-separated vertex list");
  }
};

struct ExactArgs {
  std::string graph;
  PairArgs p;
  std::string f = "id";
  bool count_edges = false;
  std::size_t max_edges = kSolveExactMaxEdges;
};

int run_exact(const ExactArgs& a, const Common& c) {
  Graph g = read_graph(a.graph);
  DistortionFn f = parse_opt("--f", [&] { return DistortionFn::parse(a.f); });
  PairSet pairs = a.p.get();
  EdgeSet s = solve_exact(g, pairs, f, {a.max_edges, a.count_edges});
  if (c.json_out) {
    std::cout << json{{"schema_version", kSchemaVersion}, {"command", "exact"}, {"f", f.to_string()},
                      {"pairs", pairs.size()}, {"edges", edges_json(g, s)}, {"weight", s.weight().to_string()}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "edges: " << edge_list(g, s) << "\nweight: " << s.weight() << "\n";
  }
  return 0;
}

struct MultilevelArgs {
  std::string graph, levels;
  std::string kind = "spanner";
  std::string f = "x2";
  std::string g = "linear";
  std::string algorithm = "round";
  std::string preset = "powers2";
  std::string q;
  std::string subroutine = "oracle";
  std::string composite_mode = "enumerate";
  std::string out;
};

int run_multilevel(const MultilevelArgs& a, const Common& c) {
  Graph g = read_graph(a.graph);
  require_connected(g, "multilevel");
  TerminalHierarchy h = load_terminals(a.levels);
  h.check_within(g);
  const std::size_t ell = h.num_levels();
  LevelCostFn gfn = parse_opt("--g", [&] { return LevelCostFn::parse(a.g); });
  SparsifierKind kind = a.kind == "steiner"
                            ? SparsifierKind::steiner()
                            : SparsifierKind::spanner(parse_opt("--f", [&] { return DistortionFn::parse(a.f); }));
  LevelSolver solver = a.subroutine == "oracle" ? oracle_solver(g, kind) : metric_closure_solver(g, kind);
  LevelCache cache(h, solver);

  json j{{"schema_version", kSchemaVersion}, {"command", "multilevel"}, {"algorithm", a.algorithm}, {"ell", ell},
         {"g", gfn.to_string()}};
  MultiLevelSolution sol;
  if (a.algorithm == "round") {
    if (a.preset == "custom" && a.q.empty()) throw UsageError("--q-preset custom needs --q");
    Quantizer q = a.preset == "bu"   ? Quantizer::bottom_up(ell)
                  : a.preset == "td" ? Quantizer::top_down(ell)
                  : a.preset == "powers2"
                      ? Quantizer::powers_of_two(ell)
                      : parse_opt("--q", [&] { return Quantizer::parse(a.q, ell); });
    sol = round_mlags(g, h, q, kind, cache);
    auto prof = quantizer_profile(gfn, q);
    j["q"] = q.to_string();
    j["A"] = prof.A.to_string();
    j["B"] = prof.B.to_string();
  } else if (a.algorithm == "composite") {
    auto res = composite(g, h, kind, gfn, cache,
                         a.composite_mode == "measured" ? CompositeMode::kMeasured : CompositeMode::kEnumerate);
    sol = res.solution;
    j["q"] = res.q.to_string();
  } else if (a.algorithm == "closure") {
    if (!kind.is_spanner()) throw UsageError("--algorithm closure needs --kind spanner");
    auto res = ml_metric_closure_spanner(g, h, kind.f);
    sol = res.solution;
    json lv = json::array();
    for (const auto& l : res.levels) lv.push_back({{"ok", l.ok}, {"stretch", l.stretch ? l.stretch->to_string() : "inf"}});
    j["levels"] = lv;
  } else {
    sol = solve_exact_multilevel_search(g, h, kind, gfn);
  }
  j["cost"] = sol.cost(g, gfn).to_string();
  json w = json::array();
  for (std::size_t i = 1; i <= ell; ++i) w.push_back(sol.level(i).weight().to_string());
  j["level_weights"] = w;
  if (!a.out.empty()) write_file_atomic(a.out, format_solution(g, sol));
  if (c.json_out) {
    std::cout << j.dump(2) << "\n";
  } else {
    if (j.contains("q")) std::cout << "q: " << j["q"].get<std::string>() << "\n";
    for (std::size_t i = 1; i <= ell; ++i) {
      std::cout << "level " << i << ": " << edge_list(g, sol.level(i)) << " (weight " << sol.level(i).weight() << ")\n";
    }
    std::cout << "cost: " << sol.cost(g, gfn) << "\n";
  }
  return 0;
}

struct RatioArgs {
  std::size_t ell = 2;
  std::string g = "linear";
  bool table = false;
  std::string out;
};

int run_ratio(const RatioArgs& a, const Common& c) {
  LevelCostFn gfn = parse_opt("--g", [&] { return LevelCostFn::parse(a.g); });
  std::string csv = "ell,g,t,t_exact,bu,td,powers2\n";
  json rows = json::array();
  const std::size_t first = a.table ? 1 : a.ell;
  for (std::size_t ell = first; ell <= a.ell; ++ell) {
    auto rep = composite_guarantee(ell, gfn);
    char t[40];
    std::snprintf(t, sizeof t, "%.12g", rep.t);
    const auto bu = single_q_guarantee(Quantizer::bottom_up(ell), gfn);
    const auto td = single_q_guarantee(Quantizer::top_down(ell), gfn);
    const auto p2 = single_q_guarantee(Quantizer::powers_of_two(ell), gfn);
    csv += std::to_string(ell) + "," + rep.g + "," + t + "," + rep.t_exact + "," + bu.to_string() + "," +
           td.to_string() + "," + p2.to_string() + "\n";
    json y = json::array();
    for (std::size_t i = 0; i < rep.y.size(); ++i) {
      if (rep.exact) y.push_back(rep.y_exact[i]);
      else y.push_back(rep.y[i]);
    }
    rows.push_back({{"ell", ell}, {"t", rep.t}, {"t_exact", rep.t_exact}, {"exact", rep.exact}, {"y", y},
                    {"columns", rep.columns.size()}, {"bu", bu.to_string()}, {"td", td.to_string()},
                    {"powers2", p2.to_string()}});
  }
  if (c.json_out) {
    std::cout << json{{"schema_version", kSchemaVersion}, {"command", "ratio"}, {"g", gfn.to_string()}, {"rows", rows}}
                     .dump(2)
              << "\n";
    if (!a.out.empty()) write_file_atomic(a.out, csv);
  } else {
    emit(a.out, csv);
  }
  return 0;
}

struct ExperimentArgs {
  std::string n = "6,8,10", ell = "2,3", t = "1.2,1.4,2,4";
  std::size_t trials = 3;
  std::uint64_t seed = 1;
  std::string mode = "exact";
  std::string subroutine = "oracle,metric-closure";
  std::size_t jobs = 1;
  bool timings = false;
  std::size_t oracle_max_edges = 40;
  std::string out;
};

template <class T, class F>
std::vector<T> split_list(const std::string& flag, const std::string& text, F conv) {
  return parse_opt(flag, [&] {
    std::vector<T> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(conv(tok));
    if (out.empty()) throw InputError("empty list");
    return out;
  });
}

int run_experiment_cmd(const ExperimentArgs& a, const Common& c) {
  auto to_size = [](const std::string& s) {
    std::size_t used = 0;
    unsigned long v = std::stoul(s, &used);
    if (used != s.size()) throw InputError("bad integer '" + s + "'");
    return static_cast<std::size_t>(v);
  };
  ExperimentConfig cfg;
  cfg.n = split_list<std::size_t>("--n", a.n, to_size);
  cfg.ell = split_list<std::size_t>("--ell", a.ell, to_size);
  cfg.stretch = split_list<Rational>("--t", a.t, [](const std::string& s) { return Rational::parse(s); });
  cfg.subroutines = split_list<Subroutine>("--subroutine", a.subroutine, [](const std::string& s) { return parse_subroutine(s); });
  cfg.trials = a.trials;
  cfg.seed = a.seed;
  cfg.mode = a.mode == "relative" ? RatioMode::kRelative : RatioMode::kExact;
  cfg.jobs = a.jobs;
  cfg.record_timings = a.timings;
  cfg.oracle_max_edges = a.oracle_max_edges;
  auto res = run_experiment(cfg);
  for (const auto& s : res.skipped) std::cerr << "skipped cell " << s << ": top terminal level below 2\n";
  const std::string csv = format_csv(res.rows);
  if (c.json_out) {
    json sk = res.skipped;
    std::cout << json{{"schema_version", kSchemaVersion}, {"command", "experiment"}, {"rows", res.rows.size()},
                      {"skipped", sk}, {"seed", a.seed}}
                     .dump(2)
              << "\n";
    if (!a.out.empty()) write_file_atomic(a.out, csv);
  } else {
    emit(a.out, csv);
  }
  return 0;
}

struct PlotArgs {
  std::string csv, out;
  std::string kind = "box", group_by = "ell", subroutine, title;
};

int run_plot(const PlotArgs& a, const Common& c) {
  PlotOptions opts;
  opts.kind = parse_opt("--kind", [&] { return parse_plot_kind(a.kind); });
  opts.group_by = parse_opt("--group-by", [&] { return parse_group_by(a.group_by); });
  opts.subroutine = a.subroutine;
  opts.title = a.title;
  auto recs = parse_csv(read_file(a.csv));
  std::string svg = plot_svg(recs, opts);
  emit(a.out, svg);
  if (c.json_out) {
    std::cout << json{{"schema_version", kSchemaVersion}, {"command", "plot"}, {"records", recs.size()}}.dump(2) << "\n";
  }
  return 0;
}

struct ExportArgs {
  std::string graph;
  PairArgs p;
  std::string f = "id";
  bool count_edges = false;
  std::string out;
};

int run_export(const ExportArgs& a, const Common& c) {
  Graph g = read_graph(a.graph);
  DistortionFn f = parse_opt("--f", [&] { return DistortionFn::parse(a.f); });
  ILPModel m = build_ilp(g, a.p.get(), f, a.count_edges);
  emit(a.out, format_lp(m));
  if (c.json_out) {
    std::cout << json{{"schema_version", kSchemaVersion}, {"command", "export-ilp"}, {"variables", m.var_names.size()},
                      {"constraints", m.constraints.size()}, {"budget", m.num_budget}, {"flow", m.num_flow},
                      {"outdeg", m.num_outdeg}, {"link", m.num_link}}
                     .dump(2)
              << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-level graph sparsifiers: spanners, Steiner trees, rounding and composite algorithms"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_flag("--json", common.json_out, "Print a JSON summary");

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a connected Erdos-Renyi graph");
  g->add_option("--n", gen.n, "Vertex count")->check(CLI::Range(3, 1000000));
  g->add_option("--seed", gen.seed, "Seed")->envname("MLSPARSE_SEED");
  g->add_option("--out", gen.out, "Output graph file (default stdout)");
  g->add_option("--ell", gen.ell, "Also sample an ell-level terminal hierarchy");
  g->add_option("--levels-out", gen.levels_out, "Terminal file for --ell");

  ClosureArgs closure;
  auto* cl = app.add_subcommand("closure", "Metric closure over a terminal set");
  cl->add_option("--graph", closure.graph, "Graph file")->required();
  closure.t.add(cl);
  cl->add_option("--out", closure.out, "Output file");

  SpannerArgs spanner;
  auto* sp = app.add_subcommand("spanner", "Greedy spanner or metric-closure subsetwise spanner");
  sp->add_option("--graph", spanner.graph, "Graph file")->required();
  spanner.t.add(sp);
  sp->add_option("--f", spanner.f, "Distortion: id, xT, mult:T, +B, add:B, linear:A,B");
  sp->add_option("--greedy", spanner.greedy, "Greedy t-spanner of the whole graph with stretch t");
  sp->add_option("--out", spanner.out, "Edge file to write");

  SteinerArgs steiner;
  auto* st = app.add_subcommand("steiner", "Steiner tree (2-approximation or exact)");
  st->add_option("--graph", steiner.graph, "Graph file")->required();
  steiner.t.add(st);
  st->add_flag("--exact", steiner.exact, "Exact dynamic program (small instances)");

  ExactArgs exact;
  auto* ex = app.add_subcommand("exact", "Minimum-weight pairwise spanner by branch and bound");
  ex->add_option("--graph", exact.graph, "Graph file")->required();
  exact.p.add(ex);
  ex->add_option("--f", exact.f, "Distortion function");
  ex->add_flag("--count-edges", exact.count_edges, "Minimize the number of edges instead of weight");
  ex->add_option("--max-edges", exact.max_edges, "Edge guard")->check(CLI::Range(1, 64));

  MultilevelArgs ml;
  auto* mlc = app.add_subcommand("multilevel", "Multi-level sparsifier");
  mlc->add_option("--graph", ml.graph, "Graph file")->required();
  mlc->add_option("--levels", ml.levels, "Terminal file ('v level' lines)")->required();
  mlc->add_option("--kind", ml.kind, "spanner or steiner")->check(CLI::IsMember({"spanner", "steiner"}));
  mlc->add_option("--f", ml.f, "Distortion function (spanner kind)");
  mlc->add_option("--g", ml.g, "Level cost: linear, const:c, table:g1,g2,...");
  mlc->add_option("--algorithm", ml.algorithm, "round, composite, closure or exact")
      ->check(CLI::IsMember({"round", "composite", "closure", "exact"}));
  mlc->add_option("--q-preset", ml.preset, "Rounding set for --algorithm round")
      ->check(CLI::IsMember({"bu", "td", "powers2", "custom"}));
  mlc->add_option("--q", ml.q, "Custom rounding set, e.g. 1,4,6");
  mlc->add_option("--subroutine", ml.subroutine, "Single-level solver")
      ->check(CLI::IsMember({"oracle", "metric-closure"}));
  mlc->add_option("--composite-mode", ml.composite_mode, "enumerate or measured")
      ->check(CLI::IsMember({"enumerate", "measured"}));
  mlc->add_option("--out", ml.out, "Solution file ('u v grade' lines)");

  RatioArgs ratio;
  auto* ra = app.add_subcommand("ratio", "Approximation guarantee of the composite algorithm");
  ra->add_option("--ell", ratio.ell, "Number of levels")->check(CLI::Range(1, 1000));
  ra->add_option("--g", ratio.g, "Level cost function");
  ra->add_flag("--table", ratio.table, "Print every ell from 1 to --ell");
  ra->add_option("--out", ratio.out, "CSV output file");

  ExperimentArgs exa;
  auto* xp = app.add_subcommand("experiment", "Run the BU/TD/CMP experiment grid");
  xp->add_option("--n", exa.n, "Vertex counts, comma-separated");
  xp->add_option("--ell", exa.ell, "Level counts, comma-separated");
  xp->add_option("--t", exa.t, "Stretch values, comma-separated");
  xp->add_option("--trials", exa.trials, "Instances per cell")->check(CLI::PositiveNumber);
  xp->add_option("--seed", exa.seed, "Seed")->envname("MLSPARSE_SEED");
  xp->add_option("--mode", exa.mode, "exact or relative")->check(CLI::IsMember({"exact", "relative"}));
  xp->add_option("--subroutine", exa.subroutine, "oracle, metric-closure, or both comma-separated");
  xp->add_option("--jobs", exa.jobs, "Worker threads")->check(CLI::PositiveNumber);
  xp->add_flag("--record-timings", exa.timings, "Fill the wall-clock columns");
  xp->add_option("--oracle-max-edges", exa.oracle_max_edges, "Edge guard of the single-level oracle")
      ->check(CLI::Range(1, 64));
  xp->add_option("--out", exa.out, "CSV output file (default stdout)");

  PlotArgs plot;
  auto* pl = app.add_subcommand("plot", "SVG plot of an experiment CSV");
  pl->add_option("--csv", plot.csv, "Results CSV")->required();
  pl->add_option("--kind", plot.kind, "box or line")->check(CLI::IsMember({"box", "line"}));
  pl->add_option("--group-by", plot.group_by, "n, ell or t")->check(CLI::IsMember({"n", "ell", "t"}));
  pl->add_option("--subroutine", plot.subroutine, "Only rows of this subroutine");
  pl->add_option("--title", plot.title, "Plot title");
  pl->add_option("--out", plot.out, "SVG output file (default stdout)");

  ExportArgs exp;
  auto* ei = app.add_subcommand("export-ilp", "Write the pairwise spanner ILP in CPLEX LP format");
  ei->add_option("--graph", exp.graph, "Graph file")->required();
  exp.p.add(ei);
  ei->add_option("--f", exp.f, "Distortion function");
  ei->add_flag("--count-edges", exp.count_edges, "Unit objective coefficients");
  ei->add_option("--out", exp.out, "LP output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*g) return run_gen(gen, common);
    if (*cl) return run_closure(closure, common);
    if (*sp) return run_spanner(spanner, common);
    if (*st) return run_steiner(steiner, common);
    if (*ex) return run_exact(exact, common);
    if (*mlc) return run_multilevel(ml, common);
    if (*ra) return run_ratio(ratio, common);
    if (*xp) return run_experiment_cmd(exa, common);
    if (*pl) return run_plot(plot, common);
    if (*ei) return run_export(exp, common);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
