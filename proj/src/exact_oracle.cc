#include "mlsparse/exact_oracle.h"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <map>

#include "mlsparse/error.h"
#include "mlsparse/io.h"

namespace mlsparse {
namespace {

using Mask = std::uint64_t;
constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();

std::int64_t mul_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("scaled weight overflow");
  return r;
}

std::int64_t add_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("scaled weight overflow");
  return r;
}

std::vector<EdgeId> mask_ids(Mask m) {
  std::vector<EdgeId> ids;
  while (m) {
    ids.push_back(static_cast<EdgeId>(std::countr_zero(m)));
    m &= m - 1;
  }
  return ids;
}

bool lex_less(Mask a, Mask b) {
  auto x = mask_ids(a), y = mask_ids(b);
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

}  // namespace

// ---- PairSet -------------------------------------------------------------------

PairSet::PairSet(std::vector<std::pair<VertexId, VertexId>> pairs) {
  for (auto& [u, v] : pairs) {
    if (u == v) throw InputError("pair set contains (v, v) for v = " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  pairs_ = std::move(pairs);
}

PairSet PairSet::all_pairs(std::span<const VertexId> vertices) {
  std::vector<VertexId> vs(vertices.begin(), vertices.end());
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  std::vector<std::pair<VertexId, VertexId>> p;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) p.emplace_back(vs[i], vs[j]);
  }
  return PairSet(std::move(p));
}

// ---- SubsetChecker --------------------------------------------------------------

void SubsetChecker::init_graph(const Graph& g) {
  if (g.num_edges() > kMaxEdges) {
    throw GuardError("subset search supports at most 64 edges, got " + std::to_string(g.num_edges()));
  }
  n_ = g.num_vertices();
  full_ = g.num_edges() == 64 ? ~Mask{0} : (Mask{1} << g.num_edges()) - 1;
  scale_ = 1;
  for (const auto& e : g.edges()) scale_ = checked_lcm(scale_, e.w.den());
  weight_.clear();
  ends_.clear();
  for (EdgeId id = 0; id < g.num_edges(); ++id) {
    const auto& w = g.edge(id).w;
    weight_.push_back(mul_checked(w.num(), scale_ / w.den()));
    ends_.emplace_back(g.edge_u(id), g.edge_v(id));
  }
  arcs_.assign(n_, {});
  for (std::size_t x = 0; x < n_; ++x) {
    for (const auto& a : g.arcs(x)) arcs_[x].emplace_back(a.to, a.edge);
  }
}

SubsetChecker::SubsetChecker(const Graph& g, const PairSet& pairs, const DistortionFn& f) {
  init_graph(g);
  std::map<std::size_t, std::vector<std::pair<std::size_t, std::int64_t>>> by_source;
  std::map<std::size_t, ShortestPathTree> trees;
  for (const auto& [u, v] : pairs.pairs()) {
    std::size_t a = g.index_of(u), b = g.index_of(v);
    auto it = trees.find(a);
    if (it == trees.end()) it = trees.emplace(a, dijkstra(g, a)).first;
    const auto& d = it->second.dist[b];
    if (!d) throw InputError("pair " + std::to_string(u) + "," + std::to_string(v) + " is disconnected");
    Rational budget = f(*d);
    by_source[a].emplace_back(b, floor_to_int(budget * Rational(scale_)));
  }
  sources_.assign(by_source.begin(), by_source.end());
}

SubsetChecker::SubsetChecker(const Graph& g, std::span<const VertexId> terminals) {
  init_graph(g);
  connectivity_ = true;
  for (VertexId v : terminals) terminals_.push_back(g.index_of(v));
  std::sort(terminals_.begin(), terminals_.end());
  terminals_.erase(std::unique(terminals_.begin(), terminals_.end()), terminals_.end());
}

std::int64_t SubsetChecker::mask_weight(std::uint64_t mask) const {
  std::int64_t s = 0;
  while (mask) {
    s = add_checked(s, weight_[std::countr_zero(mask)]);
    mask &= mask - 1;
  }
  return s;
}

bool SubsetChecker::feasible(std::uint64_t mask) const {
  return connectivity_ ? connectivity_feasible(mask) : spanner_feasible(mask);
}

bool SubsetChecker::spanner_feasible(std::uint64_t mask) const {
  std::vector<std::int64_t> dist(n_);
  std::vector<char> done(n_);
  std::vector<std::int64_t> need(n_);
  for (const auto& [src, targets] : sources_) {
    std::int64_t cutoff = 0;
    std::fill(need.begin(), need.end(), -1);
    for (const auto& [t, budget] : targets) {
      need[t] = need[t] < 0 ? budget : std::min(need[t], budget);
      cutoff = std::max(cutoff, budget);
    }
    std::size_t remaining = targets.size();
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(done.begin(), done.end(), 0);
    dist[src] = 0;
    while (remaining > 0) {
      std::size_t x = n_;
      std::int64_t best = kInf;
      for (std::size_t i = 0; i < n_; ++i) {
        if (!done[i] && dist[i] < best) {
          best = dist[i];
          x = i;
        }
      }
      if (x == n_ || best > cutoff) return false;
      done[x] = 1;
      if (need[x] >= 0) {
        if (best > need[x]) return false;
        --remaining;
      }
      for (const auto& [y, e] : arcs_[x]) {
        if (!(mask >> e & 1) || done[y]) continue;
        std::int64_t nd = best + weight_[e];
        if (nd < dist[y]) dist[y] = nd;
      }
    }
  }
  return true;
}

bool SubsetChecker::connectivity_feasible(std::uint64_t mask) const {
  if (terminals_.size() <= 1) return true;
  std::vector<char> seen(n_, 0);
  std::vector<std::size_t> stack{terminals_[0]};
  seen[terminals_[0]] = 1;
  while (!stack.empty()) {
    std::size_t x = stack.back();
    stack.pop_back();
    for (const auto& [y, e] : arcs_[x]) {
      if ((mask >> e & 1) && !seen[y]) {
        seen[y] = 1;
        stack.push_back(y);
      }
    }
  }
  for (std::size_t t : terminals_) {
    if (!seen[t]) return false;
  }
  return true;
}

// ---- single-level branch and bound ---------------------------------------------

namespace {

// Minimum objective superset of `base` that is feasible, searching over the
// edges of `candidates`. Objective ties go to the lexicographically smallest
// id list.
class SingleLevelSearch {
 public:
  SingleLevelSearch(const SubsetChecker& checker, std::vector<std::int64_t> objective)
      : checker_(checker), objective_(std::move(objective)) {}

  Mask solve(Mask base, Mask candidates) {
    order_.clear();
    for (Mask m = candidates & ~base; m; m &= m - 1) order_.push_back(std::countr_zero(m));
    std::sort(order_.begin(), order_.end(), [&](int a, int b) {
      return objective_[a] != objective_[b] ? objective_[a] > objective_[b] : a < b;
    });
    Mask all = base | candidates;
    if (!checker_.feasible(all)) {
      throw InternalError("exact search: requirement infeasible on the whole graph");
    }
    // Reverse-delete incumbent.
    Mask inc = all;
    for (int e : order_) {
      Mask trial = inc & ~(Mask{1} << e);
      if (checker_.feasible(trial)) inc = trial;
    }
    best_ = inc;
    best_obj_ = value(inc);
    recurse(0, base, value(base), all);
    return best_;
  }

 private:
  std::int64_t value(Mask m) const {
    std::int64_t s = 0;
    for (; m; m &= m - 1) s += objective_[std::countr_zero(m)];
    return s;
  }

  void offer(Mask m, std::int64_t obj) {
    if (obj < best_obj_ || (obj == best_obj_ && lex_less(m, best_))) {
      best_ = m;
      best_obj_ = obj;
    }
  }

  void recurse(std::size_t pos, Mask forced, std::int64_t forced_obj, Mask avail) {
    if (forced_obj > best_obj_) return;
    if (forced_obj == best_obj_ || pos == order_.size()) {
      if (checker_.feasible(forced)) offer(forced, forced_obj);
      return;
    }
    if (checker_.feasible(forced)) {
      offer(forced, forced_obj);
      return;
    }
    Mask bit = Mask{1} << order_[pos];
    Mask without = avail & ~bit;
    if (checker_.feasible(without)) recurse(pos + 1, forced, forced_obj, without);
    recurse(pos + 1, forced | bit, forced_obj + objective_[order_[pos]], avail);
  }

  const SubsetChecker& checker_;
  std::vector<std::int64_t> objective_;
  std::vector<int> order_;
  Mask best_ = 0;
  std::int64_t best_obj_ = 0;
};

std::vector<std::int64_t> objective_for(const Graph& g, const SubsetChecker& c, bool count_edges) {
  std::vector<std::int64_t> obj(g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e) obj[e] = count_edges ? 1 : c.scaled_weight(e);
  return obj;
}

void guard_edges(const Graph& g, const ExactOptions& options, const char* what) {
  if (g.num_edges() > options.max_edges || g.num_edges() > SubsetChecker::kMaxEdges) {
    throw GuardError(std::string(what) + ": " + std::to_string(g.num_edges()) +
                     " edges exceed the guard of " + std::to_string(options.max_edges) +
                     "; export the ILP for an external solver instead");
  }
}

}  // namespace

EdgeSet solve_exact(const Graph& g, const PairSet& pairs, const DistortionFn& f, ExactOptions options) {
  guard_edges(g, options, "solve_exact");
  require_connected(g, "solve_exact");
  if (pairs.empty()) return EdgeSet();
  SubsetChecker checker(g, pairs, f);
  SingleLevelSearch search(checker, objective_for(g, checker, options.count_edges));
  return EdgeSet(g, mask_ids(search.solve(0, checker.full_mask())));
}

EdgeSet solve_exact_connect(const Graph& g, std::span<const VertexId> terminals, ExactOptions options) {
  guard_edges(g, options, "solve_exact_connect");
  require_connected(g, "solve_exact_connect");
  SubsetChecker checker(g, terminals);
  SingleLevelSearch search(checker, objective_for(g, checker, options.count_edges));
  return EdgeSet(g, mask_ids(search.solve(0, checker.full_mask())));
}

// ---- ILP -----------------------------------------------------------------------

namespace {

std::string vname(VertexId v) {
  return v < 0 ? "m" + std::to_string(-v) : std::to_string(v);
}

std::string format_coef(const Rational& r) {
  std::string s = r.to_string();
  if (s.find('/') == std::string::npos) return s;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", r.to_double());
  return buf;
}

}  // namespace

ILPModel build_ilp(const Graph& g, const PairSet& pairs, const DistortionFn& f, bool count_edges) {
  require_connected(g, "build_ilp");
  if (pairs.empty()) throw InputError("build_ilp: empty pair set");
  ILPModel m;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    m.var_names.push_back("x_e_" + std::to_string(e));
    m.objective.push_back(count_edges ? Rational(1) : g.edge(e).w);
  }
  m.num_edge_vars = g.num_edges();
  std::map<std::size_t, ShortestPathTree> trees;
  for (const auto& [u, v] : pairs.pairs()) {
    std::size_t a = g.index_of(u), b = g.index_of(v);
    auto it = trees.find(a);
    if (it == trees.end()) it = trees.emplace(a, dijkstra(g, a)).first;
    const Rational d = *it->second.dist[b];
    const Rational budget = f(d);  // rejects f(d) < d
    const std::string tag = vname(u) + "_" + vname(v);
    // Arc variables: forward (edge u->v orientation) at 2e, backward at 2e+1.
    const std::size_t first = m.var_names.size();
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const auto& ed = g.edge(e);
      m.var_names.push_back("xp_" + tag + "_" + vname(ed.u) + "_" + vname(ed.v));
      m.var_names.push_back("xp_" + tag + "_" + vname(ed.v) + "_" + vname(ed.u));
      m.objective.push_back(Rational(0));
      m.objective.push_back(Rational(0));
    }
    auto fwd = [&](EdgeId e) { return first + 2 * e; };
    auto bwd = [&](EdgeId e) { return first + 2 * e + 1; };

    LinearConstraint budget_row{"budget_" + tag, {}, LinearConstraint::Sense::kLe, budget};
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      budget_row.terms.push_back({fwd(e), g.edge(e).w});
      budget_row.terms.push_back({bwd(e), g.edge(e).w});
    }
    m.constraints.push_back(std::move(budget_row));
    ++m.num_budget;

    for (std::size_t x = 0; x < g.num_vertices(); ++x) {
      const VertexId id = g.id_of(x);
      LinearConstraint flow{"flow_" + tag + "_" + vname(id), {}, LinearConstraint::Sense::kEq,
                            Rational(id == u ? 1 : (id == v ? -1 : 0))};
      LinearConstraint out{"outdeg_" + tag + "_" + vname(id), {}, LinearConstraint::Sense::kLe,
                           Rational(1)};
      for (const auto& arc : g.arcs(x)) {
        // Leaving x along the edge: forward if x is the smaller endpoint.
        const bool x_is_u = g.edge_u(arc.edge) == x;
        const std::size_t leave = x_is_u ? fwd(arc.edge) : bwd(arc.edge);
        const std::size_t enter = x_is_u ? bwd(arc.edge) : fwd(arc.edge);
        flow.terms.push_back({leave, Rational(1)});
        flow.terms.push_back({enter, Rational(-1)});
        out.terms.push_back({leave, Rational(1)});
      }
      m.constraints.push_back(std::move(flow));
      m.constraints.push_back(std::move(out));
      ++m.num_flow;
      ++m.num_outdeg;
    }
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      m.constraints.push_back({"link_" + tag + "_e" + std::to_string(e),
                               {{fwd(e), Rational(1)}, {bwd(e), Rational(1)}, {e, Rational(-1)}},
                               LinearConstraint::Sense::kLe,
                               Rational(0)});
      ++m.num_link;
    }
  }
  return m;
}

std::string format_lp(const ILPModel& m) {
  std::string out = "\\ pairwise spanner model\nMinimize\n obj:";
  auto emit_terms = [&](const std::vector<LinearTerm>& terms) {
    std::size_t on_line = 0;
    bool first = true;
    for (const auto& t : terms) {
      if (t.coef == Rational(0)) continue;
      if (on_line == 8) {
        out += "\n   ";
        on_line = 0;
      }
      Rational c = t.coef;
      if (c < Rational(0)) {
        out += " -";
        c = -c;
      } else if (!first) {
        out += " +";
      }
      out += " " + format_coef(c) + " " + m.var_names[t.var];
      first = false;
      ++on_line;
    }
    if (first) out += " 0 " + m.var_names.front();
  };
  std::vector<LinearTerm> obj;
  for (std::size_t i = 0; i < m.objective.size(); ++i) obj.push_back({i, m.objective[i]});
  emit_terms(obj);
  out += "\nSubject To\n";
  for (const auto& c : m.constraints) {
    out += " " + c.name + ":";
    emit_terms(c.terms);
    out += c.sense == LinearConstraint::Sense::kLe ? " <= " : " = ";
    out += format_coef(c.rhs) + "\n";
  }
  out += "Binary\n";
  for (const auto& name : m.var_names) out += " " + name + "\n";
  out += "End\n";
  return out;
}

void export_lp(const ILPModel& m, const std::string& path) { write_file_atomic(path, format_lp(m)); }

// ---- multi-level exact solvers ---------------------------------------------------

namespace {

std::vector<SubsetChecker> level_checkers(const Graph& g, const TerminalHierarchy& h,
                                          const SparsifierKind& kind) {
  std::vector<SubsetChecker> out;
  for (std::size_t i = 1; i <= h.num_levels(); ++i) {
    const auto& t = h.level(i);
    if (kind.is_spanner()) {
      out.emplace_back(g, PairSet::all_pairs(t), kind.f);
    } else {
      out.emplace_back(g, std::span<const VertexId>(t));
    }
  }
  return out;
}

// Level cost increments scaled to integers by their common denominator.
std::vector<std::int64_t> scaled_increments(const LevelCostFn& gfn, std::size_t ell, std::int64_t* denom) {
  std::int64_t d = 1;
  for (std::size_t i = 1; i <= ell; ++i) d = checked_lcm(d, gfn.increment(i).den());
  std::vector<std::int64_t> inc(ell + 1, 0);
  for (std::size_t i = 1; i <= ell; ++i) {
    Rational r = gfn.increment(i);
    inc[i] = mul_checked(r.num(), d / r.den());
  }
  *denom = d;
  return inc;
}

MultiLevelSolution from_masks(const Graph& g, const std::vector<Mask>& masks) {
  std::vector<EdgeSet> levels;
  for (Mask m : masks) levels.emplace_back(g, mask_ids(m));
  return MultiLevelSolution(std::move(levels));
}

}  // namespace

MultiLevelSolution solve_exact_multilevel(const Graph& g, const TerminalHierarchy& h,
                                          const SparsifierKind& kind, const LevelCostFn& gfn) {
  require_connected(g, "solve_exact_multilevel");
  h.check_within(g);
  const std::size_t ell = h.num_levels();
  gfn.check_levels(ell);
  const std::size_t m = g.num_edges();
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (count > kMultilevelEnumerationGuard / (ell + 1) + 1) {
      count = kMultilevelEnumerationGuard + 1;
      break;
    }
    count *= ell + 1;
  }
  if (count > kMultilevelEnumerationGuard) {
    throw GuardError("solve_exact_multilevel: (ell+1)^|E| exceeds " +
                     std::to_string(kMultilevelEnumerationGuard));
  }
  auto checkers = level_checkers(g, h, kind);

  // Feasibility of every edge subset per level.
  std::vector<std::vector<char>> ok(ell, std::vector<char>(std::size_t{1} << m));
  for (std::size_t i = 0; i < ell; ++i) {
    for (Mask s = 0; s < (Mask{1} << m); ++s) ok[i][s] = checkers[i].feasible(s);
  }
  // cost[e][y] = g(y) w(e)
  std::vector<std::vector<Rational>> cost(m, std::vector<Rational>(ell + 1));
  for (EdgeId e = 0; e < m; ++e) {
    for (std::size_t y = 0; y <= ell; ++y) cost[e][y] = gfn(y) * g.edge(e).w;
  }

  std::vector<int> grade(m, 0), best_grade;
  std::optional<Rational> best;
  std::vector<Mask> level_mask(ell, 0);
  std::function<void(std::size_t, Rational)> visit = [&](std::size_t e, Rational acc) {
    if (best && acc >= *best) return;
    if (e == m) {
      for (std::size_t i = 0; i < ell; ++i) {
        if (!ok[i][level_mask[i]]) return;
      }
      best = acc;
      best_grade = grade;
      return;
    }
    for (std::size_t y = 0; y <= ell; ++y) {
      grade[e] = static_cast<int>(y);
      for (std::size_t i = 0; i < y; ++i) level_mask[i] |= Mask{1} << e;
      visit(e + 1, acc + cost[e][y]);
      for (std::size_t i = 0; i < y; ++i) level_mask[i] &= ~(Mask{1} << e);
    }
    grade[e] = 0;
  };
  visit(0, Rational(0));
  if (!best) throw InternalError("solve_exact_multilevel: no feasible assignment");
  return MultiLevelSolution::from_grades(g, best_grade, ell);
}

namespace {

class MultilevelSearch {
 public:
  MultilevelSearch(const Graph& g, std::vector<SubsetChecker> checkers, std::vector<std::int64_t> inc,
                   std::vector<std::int64_t> level_min, std::uint64_t node_limit)
      : checkers_(std::move(checkers)),
        inc_(std::move(inc)),
        min_(std::move(level_min)),
        node_limit_(node_limit) {
    ell_ = checkers_.size();
    chain_.assign(ell_ + 1, 0);
    std::vector<int> order(g.num_edges());
    for (std::size_t e = 0; e < order.size(); ++e) order[e] = static_cast<int>(e);
    const auto& c = checkers_.front();
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const auto wa = c.scaled_weight(static_cast<EdgeId>(a)), wb = c.scaled_weight(static_cast<EdgeId>(b));
      return wa != wb ? wa > wb : a < b;
    });
    order_ = order;
  }

  // Finds a chain with cost strictly below `bound` (scaled units).
  bool run(__int128 bound) {
    best_cost_ = bound;
    found_ = false;
    level(ell_, 0, 0);
    return found_;
  }
  const std::vector<Mask>& best_chain() const { return best_; }

 private:
  std::int64_t weight(Mask m) const { return checkers_.front().mask_weight(m); }

  // Lower bound on the cost of levels 1..i given the current partial set of
  // level i has weight w.
  __int128 tail_bound(std::size_t i, std::int64_t w) const {
    __int128 s = 0;
    for (std::size_t j = 1; j <= i; ++j) s += static_cast<__int128>(inc_[j]) * std::max(w, min_[j]);
    return s;
  }

  void tick() {
    if (++nodes_ > node_limit_) {
      throw GuardError("solve_exact_multilevel_search: node limit exceeded");
    }
  }

  void level(std::size_t i, Mask above, __int128 acc) {
    if (i == 0) {
      if (acc < best_cost_) {
        best_cost_ = acc;
        best_.assign(chain_.begin() + 1, chain_.end());
        found_ = true;
      }
      return;
    }
    std::vector<int> cands;
    for (int e : order_) {
      if (!(above >> e & 1)) cands.push_back(e);
    }
    const Mask avail = checkers_.front().full_mask();
    extend(i, above, cands, 0, above, weight(above), avail, acc);
  }

  void extend(std::size_t i, Mask above, const std::vector<int>& cands, std::size_t pos, Mask forced,
              std::int64_t forced_w, Mask avail, __int128 acc) {
    tick();
    if (acc + tail_bound(i, forced_w) >= best_cost_) return;
    const SubsetChecker& chk = checkers_[i - 1];
    if (chk.feasible(forced)) {
      // Supersets in this branch are not minimal; skip non-minimal forced sets.
      for (Mask m = forced & ~above; m; m &= m - 1) {
        if (chk.feasible(forced & ~(Mask{1} << std::countr_zero(m)))) return;
      }
      chain_[i] = forced;
      level(i - 1, forced, acc + static_cast<__int128>(inc_[i]) * forced_w);
      return;
    }
    if (pos == cands.size()) return;
    const int e = cands[pos];
    const Mask bit = Mask{1} << e;
    const Mask without = avail & ~bit;
    if (chk.feasible(without)) extend(i, above, cands, pos + 1, forced, forced_w, without, acc);
    extend(i, above, cands, pos + 1, forced | bit, forced_w + checkers_.front().scaled_weight(static_cast<EdgeId>(e)), avail, acc);
  }

  std::vector<SubsetChecker> checkers_;
  std::vector<std::int64_t> inc_;
  std::vector<std::int64_t> min_;
  std::uint64_t node_limit_;
  std::uint64_t nodes_ = 0;
  std::size_t ell_ = 0;
  std::vector<int> order_;
  std::vector<Mask> chain_;
  std::vector<Mask> best_;
  __int128 best_cost_ = 0;
  bool found_ = false;
};

}  // namespace

MultiLevelSolution solve_exact_multilevel_search(const Graph& g, const TerminalHierarchy& h,
                                                 const SparsifierKind& kind, const LevelCostFn& gfn,
                                                 MultilevelSearchOptions options) {
  require_connected(g, "solve_exact_multilevel_search");
  h.check_within(g);
  if (g.num_edges() > options.max_edges || g.num_edges() > SubsetChecker::kMaxEdges) {
    throw GuardError("solve_exact_multilevel_search: " + std::to_string(g.num_edges()) +
                     " edges exceed the guard of " + std::to_string(options.max_edges));
  }
  const std::size_t ell = h.num_levels();
  gfn.check_levels(ell);
  auto checkers = level_checkers(g, h, kind);
  std::int64_t gden = 1;
  auto inc = scaled_increments(gfn, ell, &gden);

  std::vector<std::int64_t> level_min(ell + 1, 0);
  for (std::size_t i = 1; i <= ell; ++i) {
    SingleLevelSearch single(checkers[i - 1], objective_for(g, checkers[i - 1], false));
    level_min[i] = checkers[i - 1].mask_weight(single.solve(0, checkers[i - 1].full_mask()));
  }

  const std::int64_t wscale = checkers.front().scale();
  __int128 bound;
  if (options.upper_bound) {
    // Accept any chain of cost <= the supplied feasible cost.
    Rational ub = *options.upper_bound * Rational(wscale) * Rational(gden);
    bound = static_cast<__int128>(floor_to_int(ub)) + 1;
  } else {
    // Every edge on every level.
    __int128 total = checkers.front().mask_weight(checkers.front().full_mask());
    bound = 0;
    for (std::size_t i = 1; i <= ell; ++i) bound += total * inc[i];
    bound += 1;
  }
  MultilevelSearch search(g, std::move(checkers), std::move(inc), std::move(level_min), options.node_limit);
  if (!search.run(bound)) {
    throw InternalError("solve_exact_multilevel_search: no chain within the supplied upper bound");
  }
  return from_masks(g, search.best_chain());
}

}  // namespace mlsparse
