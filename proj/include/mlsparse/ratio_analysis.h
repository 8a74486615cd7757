#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mlsparse/levels.h"
#include "mlsparse/multilevel.h"
#include "mlsparse/rational.h"

namespace mlsparse {

// Worst case of sum_k g(i_{k+1} - 1) y_{i_k} over nonincreasing y >= 0 with
// sum_i (g(i) - g(i-1)) y_i = 1, i.e.
//   max_j (sum_{k <= j} g(i_{k+1} - 1)) / g(i_j),  i_{m+1} = ell + 1.
Rational single_q_guarantee(const Quantizer& q, const LevelCostFn& g);

// Levels up to this use exact rational arithmetic; larger ell uses doubles
// with a 1e-9 tolerance.
inline constexpr std::size_t kExactGuaranteeMaxLevels = 64;

struct GuaranteeReport {
  std::size_t ell = 0;
  std::string g;
  bool exact = false;
  // t as "p/q" (or an integer) when exact, empty otherwise.
  std::string t_exact;
  double t = 0;
  // Worst-case level weights y*_1..y*_ell.
  std::vector<std::string> y_exact;
  std::vector<double> y;
  // Rounding sets generated by pricing, in order of generation.
  std::vector<std::vector<std::size_t>> columns;
  std::size_t pivots = 0;
  // Subroutine ratio multiplier s; the values above are for s = 1.
  double s = 1;
};

// Guarantee of the composite algorithm: the largest t such that some
// feasible y has sum_k g(i_{k+1} - 1) y_{i_k} >= t for every Q. Solved as a
// matrix game by column generation with best_q pricing, starting from
// Q = {1} and Q = {1..ell}.
GuaranteeReport composite_guarantee(std::size_t ell, const LevelCostFn& g);

// Rounding to powers of b: b^2 / (b - 1). Throws InputError for b <= 1.
Rational base_b_ratio(const Rational& b);

}  // namespace mlsparse
