#pragma once
//------------------------------------------------------------------------------
//
//   Copyright 2026 The Adex Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "adex/errors.hpp"
#include "adex/rational.hpp"

namespace adex {

enum class LpRelation { kLessEq, kGreaterEq, kEqual };

struct LpRow {
  std::vector<Rational> coeffs;
  LpRelation relation;
  Rational rhs;
};

struct LpResult {
  bool feasible = false;
  std::vector<Rational> x;
  Rational objective;
};

/// Small dense exact-rational simplex: minimize c.x subject to the rows and
/// x >= 0. Two phases, Bland's rule, no scaling. Exists as an oracle, so
/// clarity beats speed; tableaus here are at most a few hundred entries.
class SimplexSolver {
 public:
  static LpResult minimize(const std::vector<Rational>& objective,
                           const std::vector<LpRow>& rows) {
    SimplexSolver s(objective, rows);
    return s.solve();
  }

 private:
  SimplexSolver(const std::vector<Rational>& objective, const std::vector<LpRow>& rows)
      : n_(objective.size()), objective_(objective) {
    // Build equality tableau with slack columns, rhs >= 0.
    for (const LpRow& row : rows) {
      if (row.coeffs.size() != n_) {
        throw ValidationError("lp row width mismatch");
      }
      std::vector<Rational> coeffs = row.coeffs;
      Rational rhs = row.rhs;
      LpRelation rel = row.relation;
      if (rhs.sign() < 0) {
        for (Rational& c : coeffs) c = -c;
        rhs = -rhs;
        if (rel == LpRelation::kLessEq) rel = LpRelation::kGreaterEq;
        else if (rel == LpRelation::kGreaterEq) rel = LpRelation::kLessEq;
      }
      rows_.push_back({std::move(coeffs), rel, std::move(rhs)});
    }
    m_ = rows_.size();

    slack_of_row_.assign(m_, std::size_t(-1));
    std::size_t slack_count = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (rows_[i].relation != LpRelation::kEqual) slack_of_row_[i] = slack_count++;
    }
    cols_ = n_ + slack_count + m_;  // structural + slack + artificial
    art_start_ = n_ + slack_count;

    tab_.assign(m_, std::vector<Rational>(cols_ + 1));
    basis_.assign(m_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) tab_[i][j] = rows_[i].coeffs[j];
      if (slack_of_row_[i] != std::size_t(-1)) {
        tab_[i][n_ + slack_of_row_[i]] =
            rows_[i].relation == LpRelation::kLessEq ? Rational(1) : Rational(-1);
      }
      tab_[i][art_start_ + i] = Rational(1);
      tab_[i][cols_] = rows_[i].rhs;
      basis_[i] = art_start_ + i;
    }
  }

  LpResult solve() {
    // Phase 1: minimize the sum of artificials.
    std::vector<Rational> phase1(cols_);
    for (std::size_t j = art_start_; j < cols_; ++j) phase1[j] = Rational(1);
    build_objective_row(phase1);
    run_pivots(/*allow_cols_up_to=*/cols_);
    if (obj_row_[cols_] != Rational(0)) {
      return LpResult{};  // infeasible (phase-1 optimum > 0)
    }
    drive_out_artificials();

    // Phase 2: original objective over structural columns.
    std::vector<Rational> phase2(cols_);
    for (std::size_t j = 0; j < n_; ++j) phase2[j] = objective_[j];
    build_objective_row(phase2);
    run_pivots(/*allow_cols_up_to=*/art_start_);

    LpResult out;
    out.feasible = true;
    out.x.assign(n_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) out.x[basis_[i]] = tab_[i][cols_];
    }
    out.objective = Rational(0);
    for (std::size_t j = 0; j < n_; ++j) out.objective += objective_[j] * out.x[j];
    return out;
  }

  // obj_row_ holds reduced costs: cost[j] - sum over basis rows, rhs = -value.
  void build_objective_row(const std::vector<Rational>& cost) {
    obj_row_.assign(cols_ + 1, Rational(0));
    for (std::size_t j = 0; j < cols_; ++j) obj_row_[j] = cost[j];
    for (std::size_t i = 0; i < m_; ++i) {
      const Rational factor = cost[basis_[i]];
      if (factor.is_zero()) continue;
      for (std::size_t j = 0; j <= cols_; ++j) obj_row_[j] -= factor * tab_[i][j];
    }
  }

  void run_pivots(std::size_t allow_cols_up_to) {
    while (true) {
      // Bland: entering column = smallest index with negative reduced cost.
      std::size_t enter = allow_cols_up_to;
      for (std::size_t j = 0; j < allow_cols_up_to; ++j) {
        if (obj_row_[j].sign() < 0) {
          enter = j;
          break;
        }
      }
      if (enter == allow_cols_up_to) return;  // optimal

      // Ratio test; Bland tie-break on smallest basis index.
      std::size_t leave = m_;
      Rational best_ratio;
      for (std::size_t i = 0; i < m_; ++i) {
        if (tab_[i][enter].sign() <= 0) continue;
        Rational ratio = tab_[i][cols_] / tab_[i][enter];
        if (leave == m_ || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = std::move(ratio);
        }
      }
      if (leave == m_) {
        // Unbounded phase-2 cannot happen for the price LPs this engine
        // builds (objective bounded below by the reserves); treat as defect.
        throw InfeasibleLp("lp unbounded");
      }
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    const Rational inv = Rational(1) / tab_[row][col];
    for (std::size_t j = 0; j <= cols_; ++j) tab_[row][j] *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row || tab_[i][col].is_zero()) continue;
      const Rational factor = tab_[i][col];
      for (std::size_t j = 0; j <= cols_; ++j) tab_[i][j] -= factor * tab_[row][j];
    }
    if (!obj_row_[col].is_zero()) {
      const Rational factor = obj_row_[col];
      for (std::size_t j = 0; j <= cols_; ++j) obj_row_[j] -= factor * tab_[row][j];
    }
    basis_[row] = col;
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < art_start_) continue;
      std::size_t col = art_start_;
      for (std::size_t j = 0; j < art_start_; ++j) {
        if (!tab_[i][j].is_zero()) {
          col = j;
          break;
        }
      }
      if (col < art_start_) {
        pivot(i, col);
      }
      // else: redundant all-zero row, harmless to leave in place.
    }
  }

  std::size_t n_ = 0;
  std::vector<Rational> objective_;
  std::vector<LpRow> rows_;
  std::vector<std::size_t> slack_of_row_;
  std::size_t m_ = 0;
  std::size_t cols_ = 0;
  std::size_t art_start_ = 0;
  std::vector<std::vector<Rational>> tab_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> obj_row_;
};

}  // namespace adex
