#include "mlsparse/ratio_analysis.h"

#include <gmpxx.h>

#include <algorithm>
#include <set>

#include "mlsparse/error.h"
#include "packing_simplex.h"

namespace mlsparse {

Rational single_q_guarantee(const Quantizer& q, const LevelCostFn& g) {
  g.check_levels(q.ell());
  Rational best, prefix;
  for (std::size_t k = 0; k < q.size(); ++k) {
    prefix += g(q.top_served(k));
    best = std::max(best, prefix / g(q.elements()[k]));
  }
  return best;
}

Rational base_b_ratio(const Rational& b) {
  if (b <= Rational(1)) throw InputError("base must exceed 1");
  return b * b / (b - Rational(1));
}

namespace {

mpq_class to_num(const Rational& r, mpq_class*) { return mpq_class(mpz_class(r.num()), mpz_class(r.den())); }
double to_num(const Rational& r, double*) { return r.to_double(); }

std::string num_string(const mpq_class& v) { return v.get_str(); }
double num_double(const mpq_class& v) { return v.get_d(); }
double num_double(double v) { return v; }

template <class Num>
void run_generation(std::size_t ell, const LevelCostFn& g, Num eps, GuaranteeReport& rep) {
  std::vector<Num> gv(ell + 1);
  for (std::size_t i = 0; i <= ell; ++i) gv[i] = to_num(g(i), static_cast<Num*>(nullptr));

  // Column of Q: r(Q, h) = sum_{k: i_k <= h} g(i_{k+1} - 1) / g(h).
  auto column = [&](const std::vector<std::size_t>& q) {
    std::vector<Num> col(ell);
    Num prefix(0);
    std::size_t k = 0;
    for (std::size_t h = 1; h <= ell; ++h) {
      while (k < q.size() && q[k] <= h) {
        const std::size_t top = k + 1 < q.size() ? q[k + 1] - 1 : ell;
        prefix += gv[top];
        ++k;
      }
      col[h - 1] = prefix / gv[h];
    }
    return col;
  };

  detail::PackingSimplex<Num> lp(ell, eps);
  std::set<std::vector<std::size_t>> present;
  auto add = [&](std::vector<std::size_t> q) {
    lp.add_column(column(q));
    present.insert(q);
    rep.columns.push_back(std::move(q));
  };
  add({1});
  if (ell > 1) {
    std::vector<std::size_t> all(ell);
    for (std::size_t i = 0; i < ell; ++i) all[i] = i + 1;
    add(std::move(all));
  }

  std::vector<Num> x;
  for (;;) {
    rep.pivots += lp.solve();
    x = lp.duals();
    // Y_i = sum_{h >= i} x_h / g(h)
    std::vector<Num> y(ell);
    Num acc(0);
    for (std::size_t h = ell; h >= 1; --h) {
      acc += x[h - 1] / gv[h];
      y[h - 1] = acc;
    }
    auto priced = best_q<Num>(std::span<const Num>(y), std::span<const Num>(gv));
    if (!(priced.value < Num(1) - eps) || present.count(priced.q)) break;
    add(std::move(priced.q));
  }

  const Num total = lp.objective();
  const Num t = Num(1) / total;
  rep.t = num_double(t);
  Num acc(0);
  std::vector<Num> ystar(ell);
  for (std::size_t h = ell; h >= 1; --h) {
    acc += t * x[h - 1] / gv[h];
    ystar[h - 1] = acc;
  }
  for (const auto& v : ystar) rep.y.push_back(num_double(v));
  if constexpr (std::is_same_v<Num, mpq_class>) {
    rep.t_exact = num_string(t);
    for (const auto& v : ystar) rep.y_exact.push_back(num_string(v));
  }
}

}  // namespace

GuaranteeReport composite_guarantee(std::size_t ell, const LevelCostFn& g) {
  if (ell == 0) throw InputError("composite_guarantee needs ell >= 1");
  g.check_levels(ell);
  GuaranteeReport rep;
  rep.ell = ell;
  rep.g = g.to_string();
  rep.exact = ell <= kExactGuaranteeMaxLevels;
  if (rep.exact) {
    run_generation<mpq_class>(ell, g, mpq_class(0), rep);
  } else {
    run_generation<double>(ell, g, 1e-9, rep);
  }
  return rep;
}

}  // namespace mlsparse
