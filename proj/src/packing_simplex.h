#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace mlsparse::detail {

// max sum(p) s.t. A p <= 1, p >= 0 with nonnegative A, columns appended on
// the fly. Dense tableau, slack basis at start, Bland's rule.
template <class Num>
class PackingSimplex {
 public:
  PackingSimplex(std::size_t rows, Num eps) : m_(rows), eps_(eps), rows_(rows), rhs_(rows, Num(1)), basis_(rows) {
    for (std::size_t r = 0; r < m_; ++r) {
      rows_[r].assign(m_, Num(0));
      rows_[r][r] = Num(1);
      basis_[r] = r;
    }
    reduced_.assign(m_, Num(0));
  }

  std::size_t num_columns() const { return reduced_.size() - m_; }

  void add_column(const std::vector<Num>& a) {
    if (a.size() != m_) throw std::invalid_argument("column size mismatch");
    for (std::size_t r = 0; r < m_; ++r) {
      Num s(0);
      for (std::size_t h = 0; h < m_; ++h) {
        if (a[h] != Num(0) && rows_[r][h] != Num(0)) s += rows_[r][h] * a[h];
      }
      rows_[r].push_back(s);
    }
    Num d(-1);
    for (std::size_t h = 0; h < m_; ++h) d += reduced_[h] * a[h];
    reduced_.push_back(d);
  }

  // Returns the number of pivots performed.
  std::size_t solve() {
    std::size_t pivots = 0;
    for (;;) {
      std::size_t enter = reduced_.size();
      for (std::size_t j = 0; j < reduced_.size(); ++j) {
        if (reduced_[j] < -eps_) {
          enter = j;
          break;
        }
      }
      if (enter == reduced_.size()) return pivots;
      std::size_t leave = m_;
      Num best(0);
      for (std::size_t r = 0; r < m_; ++r) {
        if (!(rows_[r][enter] > eps_)) continue;
        Num ratio = rhs_[r] / rows_[r][enter];
        if (leave == m_ || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave == m_) throw std::runtime_error("packing LP unbounded");
      pivot(leave, enter);
      ++pivots;
    }
  }

  Num objective() const { return objective_; }
  // Dual value of each row.
  std::vector<Num> duals() const { return {reduced_.begin(), reduced_.begin() + m_}; }
  std::vector<Num> primal() const {
    std::vector<Num> p(num_columns(), Num(0));
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] >= m_) p[basis_[r] - m_] = rhs_[r];
    }
    return p;
  }

 private:
  void pivot(std::size_t r, std::size_t c) {
    const std::size_t width = reduced_.size();
    Num inv = Num(1) / rows_[r][c];
    for (std::size_t j = 0; j < width; ++j) {
      if (rows_[r][j] != Num(0)) rows_[r][j] *= inv;
    }
    rhs_[r] *= inv;
    rows_[r][c] = Num(1);
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || rows_[i][c] == Num(0)) continue;
      Num f = rows_[i][c];
      for (std::size_t j = 0; j < width; ++j) {
        if (rows_[r][j] != Num(0)) rows_[i][j] -= f * rows_[r][j];
      }
      rhs_[i] -= f * rhs_[r];
      rows_[i][c] = Num(0);
    }
    Num f = reduced_[c];
    for (std::size_t j = 0; j < width; ++j) {
      if (rows_[r][j] != Num(0)) reduced_[j] -= f * rows_[r][j];
    }
    objective_ -= f * rhs_[r];
    reduced_[c] = Num(0);
    basis_[r] = c;
  }

  std::size_t m_;
  Num eps_;
  std::vector<std::vector<Num>> rows_;
  std::vector<Num> rhs_;
  std::vector<std::size_t> basis_;
  std::vector<Num> reduced_;
  Num objective_ = Num(0);
};

}  // namespace mlsparse::detail
