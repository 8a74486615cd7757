#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mlsparse/error.h"
#include "mlsparse/exact_oracle.h"
#include "mlsparse/experiments.h"
#include "mlsparse/graph.h"
#include "mlsparse/levels.h"
#include "mlsparse/multilevel.h"
#include "mlsparse/plot.h"
#include "mlsparse/ratio_analysis.h"
#include "mlsparse/spanner.h"

namespace py = pybind11;
using namespace mlsparse;

namespace {

// Exact numbers cross the boundary as fractions.Fraction.
py::object to_fraction(const Rational& r) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(r.num(), r.den());
}

Rational from_py(const py::handle& x) { return Rational::parse(py::str(x).cast<std::string>()); }

Graph make_graph(const std::vector<std::tuple<VertexId, VertexId, py::object>>& edges) {
  std::vector<Edge> es;
  for (const auto& [u, v, w] : edges) es.push_back({std::min(u, v), std::max(u, v), from_py(w)});
  return Graph::from_edges(std::move(es));
}

py::list edge_list(const Graph& g, const EdgeSet& s) {
  py::list out;
  for (EdgeId e : s.ids()) out.append(py::make_tuple(g.edge(e).u, g.edge(e).v));
  return out;
}

SparsifierKind make_kind(const std::string& kind, const std::string& f) {
  if (kind == "spanner") return SparsifierKind::spanner(DistortionFn::parse(f));
  if (kind == "steiner") return SparsifierKind::steiner();
  throw InputError("kind must be 'spanner' or 'steiner'");
}

py::dict solution_dict(const Graph& g, const MultiLevelSolution& s, const LevelCostFn& gfn) {
  py::dict d;
  py::list levels;
  for (const auto& lvl : s.levels()) levels.append(edge_list(g, lvl));
  d["levels"] = levels;
  py::dict grades;
  auto y = s.grades(g);
  for (EdgeId e = 0; e < y.size(); ++e) grades[py::make_tuple(g.edge(e).u, g.edge(e).v)] = y[e];
  d["grades"] = grades;
  d["cost"] = to_fraction(s.cost(g, gfn));
  return d;
}

}  // namespace

PYBIND11_MODULE(_mlsparse, m) {
  m.doc() = "Multi-level graph sparsifiers";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<GuardError>(m, "GuardError", PyExc_RuntimeError);

  py::class_<Graph>(m, "Graph")
      .def(py::init(&make_graph), py::arg("edges"), "Graph from (u, v, weight) triples.")
      .def_static("parse", [](const std::string& text) { return parse_graph(text); })
      .def_static("load", [](const std::string& path) { return load_graph(path); })
      .def("format", &format_graph)
      .def_property_readonly("num_vertices", &Graph::num_vertices)
      .def_property_readonly("num_edges", &Graph::num_edges)
      .def_property_readonly("vertices", &Graph::vertices)
      .def_property_readonly("edges",
                             [](const Graph& g) {
                               py::list out;
                               for (const auto& e : g.edges()) out.append(py::make_tuple(e.u, e.v, to_fraction(e.w)));
                               return out;
                             })
      .def("is_connected", &Graph::is_connected)
      .def("__repr__", [](const Graph& g) {
        return "<Graph n=" + std::to_string(g.num_vertices()) + " m=" + std::to_string(g.num_edges()) + ">";
      });

  m.def("distance", [](const Graph& g, VertexId u, VertexId v) { return to_fraction(apsp(g).dist(u, v)); });
  m.def("diameter", [](const Graph& g) { return to_fraction(diameter(g)); });
  m.def("metric_closure", [](const Graph& g, const std::vector<VertexId>& t) {
    auto c = metric_closure(g, t);
    py::list out;
    for (EdgeId e = 0; e < c.graph.num_edges(); ++e) {
      const auto& ce = c.graph.edge(e);
      out.append(py::make_tuple(ce.u, ce.v, to_fraction(ce.w), edge_list(g, EdgeSet(g, c.paths[e]))));
    }
    return out;
  });
  m.def("mst", [](const Graph& g) { return edge_list(g, mst(g)); });
  m.def(
      "steiner_tree",
      [](const Graph& g, const std::vector<VertexId>& t, bool exact) {
        EdgeSet s = exact ? steiner_exact(g, t) : steiner_2approx(g, t);
        return py::make_tuple(edge_list(g, s), to_fraction(s.weight()));
      },
      py::arg("graph"), py::arg("terminals"), py::arg("exact") = false);
  m.def("greedy_spanner", [](const Graph& g, const py::object& t) {
    EdgeSet s = greedy_spanner(g, from_py(t));
    return py::make_tuple(edge_list(g, s), to_fraction(s.weight()));
  });
  m.def(
      "subsetwise_spanner",
      [](const Graph& g, const std::vector<VertexId>& t, const std::string& f) {
        auto s = subsetwise_spanner(g, t, DistortionFn::parse(f));
        return py::make_tuple(edge_list(g, s.edges), to_fraction(s.edges.weight()));
      },
      py::arg("graph"), py::arg("terminals"), py::arg("f") = "x2");
  m.def(
      "solve_exact",
      [](const Graph& g, const std::vector<std::pair<VertexId, VertexId>>& pairs, const std::string& f,
         std::size_t max_edges) {
        EdgeSet s = solve_exact(g, PairSet(pairs), DistortionFn::parse(f), ExactOptions{max_edges, false});
        return py::make_tuple(edge_list(g, s), to_fraction(s.weight()));
      },
      py::arg("graph"), py::arg("pairs"), py::arg("f") = "id", py::arg("max_edges") = kSolveExactMaxEdges);
  m.def(
      "export_lp",
      [](const Graph& g, const std::vector<std::pair<VertexId, VertexId>>& pairs, const std::string& f) {
        return format_lp(build_ilp(g, PairSet(pairs), DistortionFn::parse(f)));
      },
      py::arg("graph"), py::arg("pairs"), py::arg("f") = "id");

  m.def(
      "multilevel",
      [](const Graph& g, const std::vector<std::vector<VertexId>>& levels, const std::string& kind_name,
         const std::string& f, const std::string& g_name, const std::string& algorithm,
         const std::optional<std::vector<std::size_t>>& q, const std::string& subroutine) {
        TerminalHierarchy h(levels);
        h.check_within(g);
        const auto kind = make_kind(kind_name, f);
        const auto gfn = LevelCostFn::parse(g_name);
        gfn.check_levels(h.num_levels());
        const std::size_t ell = h.num_levels();
        if (subroutine != "oracle" && subroutine != "metric-closure") {
          throw InputError("subroutine must be 'oracle' or 'metric-closure'");
        }
        LevelSolver solver =
            subroutine == "oracle" ? oracle_solver(g, kind) : metric_closure_solver(g, kind);
        if (algorithm == "round") {
          Quantizer quant = q ? Quantizer(*q, ell) : Quantizer::top_down(ell);
          return solution_dict(g, round_mlags(g, h, quant, kind, solver), gfn);
        }
        if (algorithm == "composite") {
          LevelCache cache(h, solver);
          auto r = composite(g, h, kind, gfn, cache);
          py::dict d = solution_dict(g, r.solution, gfn);
          d["q"] = r.q.elements();
          return d;
        }
        if (algorithm == "closure") {
          if (!kind.is_spanner()) throw InputError("closure algorithm builds spanners only");
          return solution_dict(g, ml_metric_closure_spanner(g, h, kind.f).solution, gfn);
        }
        if (algorithm == "exact") return solution_dict(g, solve_exact_multilevel_search(g, h, kind, gfn), gfn);
        throw InputError("algorithm must be round, composite, closure or exact");
      },
      py::arg("graph"), py::arg("levels"), py::arg("kind") = "spanner", py::arg("f") = "x2",
      py::arg("g") = "linear", py::arg("algorithm") = "composite", py::arg("q") = py::none(),
      py::arg("subroutine") = "oracle");

  m.def("best_q", [](const std::vector<py::object>& y, const std::string& g_name) {
    std::vector<Rational> ys;
    for (const auto& v : y) ys.push_back(from_py(v));
    auto r = best_q(std::span<const Rational>(ys), LevelCostFn::parse(g_name));
    return py::make_tuple(r.q, to_fraction(r.value));
  }, py::arg("y"), py::arg("g") = "linear");
  m.def(
      "single_q_guarantee",
      [](const std::vector<std::size_t>& q, std::size_t ell, const std::string& g_name) {
        return to_fraction(single_q_guarantee(Quantizer(q, ell), LevelCostFn::parse(g_name)));
      },
      py::arg("q"), py::arg("ell"), py::arg("g") = "linear");
  m.def(
      "composite_guarantee",
      [](std::size_t ell, const std::string& g_name) {
        auto r = composite_guarantee(ell, LevelCostFn::parse(g_name));
        py::dict d;
        d["ell"] = r.ell;
        d["exact"] = r.exact;
        d["t"] = r.t;
        static py::object fraction = py::module_::import("fractions").attr("Fraction");
        d["t_exact"] = r.exact ? fraction(r.t_exact) : py::none();
        py::list y;
        if (r.exact) {
          for (const auto& s : r.y_exact) y.append(fraction(s));
        } else {
          for (double v : r.y) y.append(v);
        }
        d["y"] = y;
        d["columns"] = r.columns;
        return d;
      },
      py::arg("ell"), py::arg("g") = "linear");
  m.def("base_b_ratio", [](const py::object& b) { return to_fraction(base_b_ratio(from_py(b))); });

  m.def(
      "gen_er",
      [](std::size_t n, std::uint64_t seed) { return gen_er(n, seed); }, py::arg("n"), py::arg("seed"));
  m.def(
      "sample_terminals",
      [](const Graph& g, std::size_t ell, std::uint64_t seed) {
        auto h = sample_terminals(g, ell, seed);
        std::vector<std::vector<VertexId>> out;
        for (std::size_t i = 1; i <= h.num_levels(); ++i) out.push_back(h.level(i));
        return out;
      },
      py::arg("graph"), py::arg("ell"), py::arg("seed"));
  m.def(
      "run_experiment",
      [](const std::vector<std::size_t>& n, const std::vector<std::size_t>& ell, const std::vector<py::object>& t,
         std::size_t trials, std::uint64_t seed, const std::vector<std::string>& subroutines,
         const std::string& mode, std::size_t jobs) {
        ExperimentConfig cfg;
        cfg.n = n;
        cfg.ell = ell;
        cfg.stretch.clear();
        for (const auto& v : t) cfg.stretch.push_back(from_py(v));
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.subroutines.clear();
        for (const auto& s : subroutines) cfg.subroutines.push_back(parse_subroutine(s));
        if (mode != "exact" && mode != "relative") throw InputError("mode must be exact or relative");
        cfg.mode = mode == "exact" ? RatioMode::kExact : RatioMode::kRelative;
        cfg.jobs = jobs;
        py::gil_scoped_release release;
        return format_csv(run_experiment(cfg).rows);
      },
      py::arg("n") = std::vector<std::size_t>{8}, py::arg("ell") = std::vector<std::size_t>{2},
      py::arg("t") = std::vector<py::object>{py::int_(2)}, py::arg("trials") = 1, py::arg("seed") = 1,
      py::arg("subroutines") = std::vector<std::string>{"oracle", "metric-closure"}, py::arg("mode") = "exact",
      py::arg("jobs") = 1,
      "Runs the BU/TD/CMP grid and returns the results CSV text.");
  m.def(
      "plot_svg",
      [](const std::string& csv, const std::string& kind, const std::string& group_by, const std::string& title) {
        PlotOptions o;
        o.kind = parse_plot_kind(kind);
        o.group_by = parse_group_by(group_by);
        o.title = title;
        return plot_svg(parse_csv(csv), o);
      },
      py::arg("csv"), py::arg("kind") = "box", py::arg("group_by") = "ell", py::arg("title") = "");
}
