// Copyright 2026 The corrq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "corrq/error.hpp"

namespace corrq::lp {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kPhase1Tol = 1e-9;

// Tableau layout: columns [structural | slack | artificial | rhs], one row
// per constraint plus the objective row at the end (reduced costs, maximize).
class Tableau {
 public:
  Tableau(const Problem& p) {
    n_ = p.variables;
    slacks_ = static_cast<int>(p.a_ub.size());
    artificials_ = static_cast<int>(p.a_eq.size());
    rows_ = slacks_ + artificials_;
    cols_ = n_ + slacks_ + artificials_ + 1;
    t_.assign(rows_ + 1, std::vector<double>(cols_, 0.0));
    basis_.resize(rows_);

    for (int i = 0; i < slacks_; ++i) {
      for (int j = 0; j < n_; ++j) t_[i][j] = p.a_ub[i][j];
      double rhs = p.b_ub[i];
      if (rhs < 0.0) {
        // Flip the row and use an artificial instead of the (negative) slack.
        for (int j = 0; j < n_; ++j) t_[i][j] = -t_[i][j];
        t_[i][n_ + i] = -1.0;
        rhs = -rhs;
        flipped_.push_back(i);
      } else {
        t_[i][n_ + i] = 1.0;
      }
      t_[i][cols_ - 1] = rhs;
      basis_[i] = n_ + i;
    }
    for (int i = 0; i < artificials_; ++i) {
      int row = slacks_ + i;
      for (int j = 0; j < n_; ++j) t_[row][j] = p.a_eq[i][j];
      double rhs = p.b_eq[i];
      if (rhs < 0.0) {
        for (int j = 0; j < n_; ++j) t_[row][j] = -t_[row][j];
        rhs = -rhs;
      }
      t_[row][n_ + slacks_ + i] = 1.0;
      t_[row][cols_ - 1] = rhs;
      basis_[row] = n_ + slacks_ + i;
    }
    // Rows whose slack had to be flipped also need artificials; give them
    // dedicated columns appended after the equality artificials.
    if (!flipped_.empty()) {
      int extra = static_cast<int>(flipped_.size());
      for (auto& row : t_) row.insert(row.end() - 1, extra, 0.0);
      cols_ += extra;
      for (int k = 0; k < extra; ++k) {
        int row = flipped_[k];
        int col = n_ + slacks_ + artificials_ + k;
        t_[row][col] = 1.0;
        basis_[row] = col;
      }
      artificials_ += extra;
    }
  }

  int artificial_start() const { return n_ + slacks_; }
  int artificial_count() const { return artificials_; }
  int structural_count() const { return n_; }
  int rows() const { return rows_; }
  const std::vector<int>& basis() const { return basis_; }
  double rhs(int row) const { return t_[row][cols_ - 1]; }

  void set_objective_phase1() {
    // maximize -(sum of artificials). Reduced costs z_j = cB.B^-1.A_j - c_j
    // with c_j = -1 on artificial columns, 0 elsewhere, priced out over the
    // starting basis.
    auto& z = t_[rows_];
    std::fill(z.begin(), z.end(), 0.0);
    for (int j = artificial_start(); j < cols_ - 1; ++j) z[j] = 1.0;
    for (int i = 0; i < rows_; ++i) {
      if (basis_[i] >= artificial_start()) {
        for (int j = 0; j < cols_; ++j) z[j] -= t_[i][j];
      }
    }
  }

  void set_objective_phase2(const std::vector<double>& c) {
    auto& z = t_[rows_];
    std::fill(z.begin(), z.end(), 0.0);
    for (int j = 0; j < n_; ++j) z[j] = -c[j];
    // Price out the current basis.
    for (int i = 0; i < rows_; ++i) {
      double coeff = z[basis_[i]];
      if (coeff == 0.0) continue;
      for (int j = 0; j < cols_; ++j) z[j] -= coeff * t_[i][j];
    }
  }

  // One Bland-rule iteration. Returns 0 if optimal, 1 if a pivot happened,
  // -1 if unbounded.
  int iterate(bool allow_artificial_entering) {
    auto& z = t_[rows_];
    int entering = -1;
    int limit = allow_artificial_entering ? cols_ - 1 : artificial_start();
    for (int j = 0; j < limit; ++j) {
      if (z[j] < -kPivotTol) {
        entering = j;
        break;
      }
    }
    if (entering < 0) return 0;

    int leaving = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < rows_; ++i) {
      double a = t_[i][entering];
      if (a > kPivotTol) {
        double ratio = t_[i][cols_ - 1] / a;
        if (ratio < best - 1e-15 ||
            (std::abs(ratio - best) <= 1e-15 && (leaving < 0 || basis_[i] < basis_[leaving]))) {
          best = ratio;
          leaving = i;
        }
      }
    }
    if (leaving < 0) return -1;
    pivot(leaving, entering);
    return 1;
  }

  void pivot(int row, int col) {
    double p = t_[row][col];
    for (int j = 0; j < cols_; ++j) t_[row][j] /= p;
    for (int i = 0; i <= rows_; ++i) {
      if (i == row) continue;
      double f = t_[i][col];
      if (f == 0.0) continue;
      for (int j = 0; j < cols_; ++j) t_[i][j] -= f * t_[row][j];
    }
    basis_[row] = col;
  }

  // Drive any artificial still basic at level ~0 out of the basis.
  void expel_artificials() {
    for (int i = 0; i < rows_; ++i) {
      if (basis_[i] < artificial_start()) continue;
      int col = -1;
      for (int j = 0; j < artificial_start(); ++j) {
        if (std::abs(t_[i][j]) > kPivotTol) {
          col = j;
          break;
        }
      }
      if (col >= 0) pivot(i, col);
      // Otherwise the row is all zeros (redundant constraint); leave it.
    }
  }

  double objective_row_value() const { return t_[rows_][cols_ - 1]; }

  std::vector<double> extract(int run_limit) const {
    std::vector<double> x(run_limit, 0.0);
    for (int i = 0; i < rows_; ++i) {
      if (basis_[i] < run_limit) x[basis_[i]] = t_[i][cols_ - 1];
    }
    return x;
  }

 private:
  int n_, slacks_, artificials_, rows_, cols_;
  std::vector<std::vector<double>> t_;
  std::vector<int> basis_;
  std::vector<int> flipped_;
};

}  // namespace

Solution solve(const Problem& problem) {
  for (const auto& row : problem.a_ub) {
    if (static_cast<int>(row.size()) != problem.variables) {
      throw InputError("lp: inequality row has wrong width");
    }
  }
  for (const auto& row : problem.a_eq) {
    if (static_cast<int>(row.size()) != problem.variables) {
      throw InputError("lp: equality row has wrong width");
    }
  }

  Tableau tab(problem);
  Solution sol;

  const int max_iter = 20000 + 200 * (problem.variables + tab.rows());

  if (tab.artificial_count() > 0) {
    tab.set_objective_phase1();
    int iter = 0;
    while (true) {
      int status = tab.iterate(true);
      if (status == 0) break;
      if (status == -1) throw NumericError("lp: phase 1 reported unbounded (bad tableau)");
      if (++iter > max_iter) throw NumericError("lp: phase 1 iteration budget exceeded");
    }
    // Optimal phase-1 value is -(sum of artificials); feasible iff ~0.
    double infeasibility = -tab.objective_row_value();
    if (std::abs(infeasibility) > kPhase1Tol) {
      sol.feasible = false;
      return sol;
    }
    tab.expel_artificials();
  }

  sol.feasible = true;
  std::vector<double> c = problem.objective;
  c.resize(problem.variables, 0.0);
  tab.set_objective_phase2(c);
  int iter = 0;
  while (true) {
    int status = tab.iterate(false);
    if (status == 0) break;
    if (status == -1) {
      sol.bounded = false;
      return sol;
    }
    if (++iter > max_iter) throw NumericError("lp: phase 2 iteration budget exceeded");
  }

  sol.x = tab.extract(problem.variables);
  sol.objective_value = 0.0;
  for (int j = 0; j < problem.variables; ++j) sol.objective_value += c[j] * sol.x[j];
  return sol;
}

}  // namespace corrq::lp
