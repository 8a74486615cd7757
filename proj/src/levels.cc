#include "mlsparse/levels.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "mlsparse/error.h"

namespace mlsparse {

TerminalHierarchy::TerminalHierarchy(std::vector<std::vector<VertexId>> sets) : sets_(std::move(sets)) {
  if (sets_.empty()) throw InputError("terminal hierarchy needs at least one level");
  for (auto& s : sets_) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  if (sets_.back().empty()) throw InputError("top terminal level is empty");
  for (std::size_t i = 1; i < sets_.size(); ++i) {
    if (!std::includes(sets_[i - 1].begin(), sets_[i - 1].end(), sets_[i].begin(), sets_[i].end())) {
      throw InputError("terminal level " + std::to_string(i + 1) + " is not contained in level " +
                       std::to_string(i));
    }
  }
}

std::size_t TerminalHierarchy::level_of(VertexId v) const {
  std::size_t lvl = 0;
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    if (std::binary_search(sets_[i].begin(), sets_[i].end(), v)) lvl = i + 1;
  }
  return lvl;
}

void TerminalHierarchy::check_within(const Graph& g) const {
  for (VertexId v : sets_.front()) {
    if (!g.has_vertex(v)) throw InputError("terminal " + std::to_string(v) + " is not in the graph");
  }
}

TerminalHierarchy parse_terminals(std::string_view text) {
  std::map<VertexId, std::size_t> levels;
  std::size_t lineno = 0, ell = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a)) continue;
    if (!(ls >> b) || (ls >> extra)) throw ParseError(lineno, "expected 'v level'");
    VertexId v = 0;
    long long lvl = 0;
    auto r1 = std::from_chars(a.data(), a.data() + a.size(), v);
    auto r2 = std::from_chars(b.data(), b.data() + b.size(), lvl);
    if (r1.ec != std::errc() || r1.ptr != a.data() + a.size() || r2.ec != std::errc() ||
        r2.ptr != b.data() + b.size() || lvl < 1) {
      throw ParseError(lineno, "expected integer vertex and level >= 1");
    }
    if (!levels.emplace(v, static_cast<std::size_t>(lvl)).second) {
      throw ParseError(lineno, "vertex listed twice");
    }
    ell = std::max(ell, static_cast<std::size_t>(lvl));
  }
  if (levels.empty()) throw InputError("terminal file lists no vertices");
  std::vector<std::vector<VertexId>> sets(ell);
  for (auto [v, lvl] : levels) {
    for (std::size_t i = 0; i < lvl; ++i) sets[i].push_back(v);
  }
  return TerminalHierarchy(std::move(sets));
}

TerminalHierarchy load_terminals(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open terminal file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_terminals(ss.str());
}

std::string format_terminals(const TerminalHierarchy& h) {
  std::string out;
  for (VertexId v : h.level(1)) {
    out += std::to_string(v) + " " + std::to_string(h.level_of(v)) + "\n";
  }
  return out;
}

// ---- LevelCostFn -------------------------------------------------------------

LevelCostFn LevelCostFn::linear() { return LevelCostFn(); }

LevelCostFn LevelCostFn::constant(Rational c) {
  if (c <= Rational(0)) throw InputError("constant level cost must be positive");
  LevelCostFn g;
  g.kind_ = Kind::kConstant;
  g.constant_ = c;
  return g;
}

LevelCostFn LevelCostFn::table(std::vector<Rational> values) {
  if (values.empty()) throw InputError("level cost table is empty");
  LevelCostFn g;
  g.kind_ = Kind::kTable;
  g.table_ = std::move(values);
  g.check_levels(g.table_.size());
  return g;
}

LevelCostFn LevelCostFn::parse(std::string_view text) {
  if (text == "linear") return linear();
  if (text.starts_with("const:")) return constant(Rational::parse(text.substr(6)));
  if (text.starts_with("table:")) {
    std::vector<Rational> vals;
    std::string_view body = text.substr(6);
    while (!body.empty()) {
      auto comma = body.find(',');
      vals.push_back(Rational::parse(body.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
    }
    return table(std::move(vals));
  }
  throw InputError("unknown level cost '" + std::string(text) + "'");
}

Rational LevelCostFn::operator()(std::size_t i) const {
  if (i == 0) return Rational(0);
  switch (kind_) {
    case Kind::kLinear:
      return Rational(static_cast<std::int64_t>(i));
    case Kind::kConstant:
      return constant_;
    case Kind::kTable:
      if (i > table_.size()) {
        throw InputError("level cost table has no value for level " + std::to_string(i));
      }
      return table_[i - 1];
  }
  return Rational(0);
}

void LevelCostFn::check_levels(std::size_t ell) const {
  for (std::size_t i = 1; i <= ell; ++i) {
    Rational gi = (*this)(i);
    if (gi <= Rational(0)) throw InputError("level cost must be positive");
    if (i > 1 && gi < (*this)(i - 1)) throw InputError("level cost must be nondecreasing");
  }
}

std::string LevelCostFn::to_string() const {
  switch (kind_) {
    case Kind::kLinear:
      return "linear";
    case Kind::kConstant:
      return "const:" + constant_.to_string();
    case Kind::kTable: {
      std::string s = "table:";
      for (std::size_t i = 0; i < table_.size(); ++i) s += (i ? "," : "") + table_[i].to_string();
      return s;
    }
  }
  return "?";
}

// ---- MultiLevelSolution ------------------------------------------------------

MultiLevelSolution::MultiLevelSolution(std::vector<EdgeSet> levels) : levels_(std::move(levels)) {
  for (std::size_t i = 1; i < levels_.size(); ++i) {
    if (!is_subset(levels_[i], levels_[i - 1])) {
      throw InputError("solution levels are not nested at level " + std::to_string(i + 1));
    }
  }
}

MultiLevelSolution MultiLevelSolution::from_grades(const Graph& g, std::span<const int> grades,
                                                   std::size_t ell) {
  if (grades.size() != g.num_edges()) throw InputError("grade vector size mismatch");
  std::vector<std::vector<EdgeId>> ids(ell);
  for (EdgeId e = 0; e < grades.size(); ++e) {
    if (grades[e] < 0 || static_cast<std::size_t>(grades[e]) > ell) {
      throw InputError("grade out of range on edge " + std::to_string(e));
    }
    for (int i = 0; i < grades[e]; ++i) ids[i].push_back(e);
  }
  std::vector<EdgeSet> levels;
  for (auto& v : ids) levels.emplace_back(g, std::move(v));
  return MultiLevelSolution(std::move(levels));
}

std::vector<int> MultiLevelSolution::grades(const Graph& g) const {
  std::vector<int> y(g.num_edges(), 0);
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    for (EdgeId e : levels_[i].ids()) y[e] = static_cast<int>(i + 1);
  }
  return y;
}

Rational MultiLevelSolution::cost(const Graph& g, const LevelCostFn& gfn) const {
  Rational total;
  auto y = grades(g);
  for (EdgeId e = 0; e < y.size(); ++e) {
    if (y[e] > 0) total += gfn(static_cast<std::size_t>(y[e])) * g.edge(e).w;
  }
  return total;
}

Rational MultiLevelSolution::level_sum_cost(const LevelCostFn& gfn) const {
  Rational total;
  for (std::size_t i = 0; i < levels_.size(); ++i) total += gfn.increment(i + 1) * levels_[i].weight();
  return total;
}

std::string format_solution(const Graph& g, const MultiLevelSolution& s) {
  std::string out = "# levels " + std::to_string(s.num_levels()) + "\n";
  auto y = s.grades(g);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    out += std::to_string(g.edge(e).u) + " " + std::to_string(g.edge(e).v) + " " +
           std::to_string(y[e]) + "\n";
  }
  return out;
}

MultiLevelSolution parse_solution(const Graph& g, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0, ell = 0;
  bool have_ell = false;
  std::vector<int> grades(g.num_edges(), 0);
  while (std::getline(in, line)) {
    ++lineno;
    if (line.rfind("# levels ", 0) == 0) {
      ell = std::stoul(line.substr(9));
      have_ell = true;
      continue;
    }
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    VertexId u = 0, v = 0;
    int y = 0;
    if (!(ls >> u)) continue;
    if (!(ls >> v >> y) || y < 0) throw ParseError(lineno, "expected 'u v grade'");
    auto e = g.find_edge(u, v);
    if (!e) throw ParseError(lineno, "edge not in graph");
    grades[*e] = y;
    if (!have_ell) ell = std::max(ell, static_cast<std::size_t>(y));
  }
  return MultiLevelSolution::from_grades(g, grades, ell);
}

}  // namespace mlsparse
