#include "gqc/lp.hpp"

#include <stdexcept>

#include "gqc/linalg.hpp"

namespace gqc {

namespace {

// Standard-form tableau: minimize c x subject to A x = b, x >= 0, b >= 0.
// Columns: structural variables (free originals split into +/- parts, then
// slack/surplus), followed by one artificial per row.  The artificial columns
// stay in the tableau through phase 2 (barred from entering) so that the
// duals can be read off the final objective row.
struct Tableau {
  int m = 0;                 // rows
  int n_struct = 0;          // structural columns
  std::vector<std::vector<Rat>> a;  // m x (n_struct + m)
  std::vector<Rat> b;        // m
  std::vector<Rat> cost;     // phase-2 costs over all columns
  std::vector<Rat> z;        // reduced costs c_j - c_B B^-1 A_j
  Rat z0;                    // current objective value
  std::vector<int> basis;    // per row: basic column

  int total_cols() const { return n_struct + m; }

  void pivot(int row, int col) {
    Rat piv = a[row][col];
    for (int j = 0; j < total_cols(); ++j) a[row][j] /= piv;
    b[row] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == row || a[i][col] == 0) continue;
      Rat f = a[i][col];
      for (int j = 0; j < total_cols(); ++j)
        if (a[row][j] != 0) a[i][j] -= f * a[row][j];
      b[i] -= f * b[row];
    }
    if (z[col] != 0) {
      Rat f = z[col];
      for (int j = 0; j < total_cols(); ++j)
        if (a[row][j] != 0) z[j] -= f * a[row][j];
      z0 -= f * b[row];
    }
    basis[row] = col;
  }

  // Bland's rule; `allow` marks columns eligible to enter.  Returns false at
  // optimality, throws Unbounded via status out-parameter convention below.
  enum class StepResult { Optimal, Pivoted, Unbounded };
  StepResult step(const std::vector<char>& allow) {
    int enter = -1;
    for (int j = 0; j < total_cols(); ++j) {
      if (allow[j] && z[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return StepResult::Optimal;
    int leave = -1;
    Rat best_ratio;
    for (int i = 0; i < m; ++i) {
      if (a[i][enter] <= 0) continue;
      Rat ratio = b[i] / a[i][enter];
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) return StepResult::Unbounded;
    pivot(leave, enter);
    return StepResult::Pivoted;
  }

  void reset_reduced_costs(const std::vector<Rat>& costs) {
    cost = costs;
    z = costs;
    z0 = 0;
    // z_j <- c_j - c_B B^-1 A_j, computed by eliminating basic columns.
    for (int i = 0; i < m; ++i) {
      Rat cb = cost[basis[i]];
      if (cb == 0) continue;
      for (int j = 0; j < total_cols(); ++j)
        if (a[i][j] != 0) z[j] -= cb * a[i][j];
      z0 -= cb * b[i];
    }
  }
};

void verify_optimal(const LPProblem& p, const LPResult& r) {
  const int nvar = static_cast<int>(p.objective.size());
  auto nonneg = [&](int j) { return p.nonneg.empty() ? true : p.nonneg[j]; };
  // Primal feasibility.
  for (int j = 0; j < nvar; ++j)
    if (nonneg(j) && r.x[j] < 0) throw std::logic_error("lp: primal witness negative");
  Rat primal_value = 0;
  for (int j = 0; j < nvar; ++j) primal_value += p.objective[j] * r.x[j];
  if (primal_value != r.value) throw std::logic_error("lp: objective mismatch");
  std::vector<Rat> slack(p.rows.size());
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    Rat lhs = dot(p.rows[i].a, r.x);
    slack[i] = lhs - p.rows[i].b;
    bool ok = p.rows[i].rel == Rel::Eq  ? slack[i] == 0
              : p.rows[i].rel == Rel::Le ? slack[i] <= 0
                                         : slack[i] >= 0;
    if (!ok) throw std::logic_error("lp: primal witness infeasible");
  }
  // Dual feasibility, strong duality and complementary slackness.  For a
  // minimization problem the multiplier of a Ge row is >= 0 and of a Le row
  // is <= 0; a maximization problem flips both.
  Rat dual_value = 0;
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    dual_value += r.dual[i] * p.rows[i].b;
    Rat y = r.dual[i];
    switch (p.rows[i].rel) {
      case Rel::Eq: break;
      case Rel::Ge:
        if ((p.maximize && y > 0) || (!p.maximize && y < 0))
          throw std::logic_error("lp: dual sign violation");
        break;
      case Rel::Le:
        if ((p.maximize && y < 0) || (!p.maximize && y > 0))
          throw std::logic_error("lp: dual sign violation");
        break;
    }
    if (y != 0 && slack[i] != 0) throw std::logic_error("lp: complementary slackness (rows)");
  }
  if (dual_value != r.value) throw std::logic_error("lp: strong duality violated");
  for (int j = 0; j < nvar; ++j) {
    Rat reduced = p.objective[j];
    for (std::size_t i = 0; i < p.rows.size(); ++i)
      reduced -= r.dual[i] * p.rows[i].a[j];
    if (nonneg(j)) {
      // For min: c_j - A^T y >= 0.  For max: c_j - A^T y <= 0.
      bool ok = p.maximize ? reduced <= 0 : reduced >= 0;
      if (!ok) throw std::logic_error("lp: dual constraint violated");
      if (r.x[j] != 0 && reduced != 0)
        throw std::logic_error("lp: complementary slackness (columns)");
    } else {
      if (reduced != 0) throw std::logic_error("lp: dual equality violated for free var");
    }
  }
}

}  // namespace

LPResult solve_lp(const LPProblem& p) {
  const int nvar = static_cast<int>(p.objective.size());
  const int nrows = static_cast<int>(p.rows.size());
  for (const auto& row : p.rows)
    if (static_cast<int>(row.a.size()) != nvar)
      throw std::invalid_argument("solve_lp: constraint dimension mismatch");
  if (!p.nonneg.empty() && static_cast<int>(p.nonneg.size()) != nvar)
    throw std::invalid_argument("solve_lp: nonneg flags dimension mismatch");
  auto nonneg = [&](int j) { return p.nonneg.empty() ? true : p.nonneg[j]; };

  // Column layout: for each variable one column (plus a negated twin when
  // free), then one slack/surplus column per inequality row.
  std::vector<int> pos_col(nvar), neg_col(nvar, -1);
  int col_count = 0;
  for (int j = 0; j < nvar; ++j) {
    pos_col[j] = col_count++;
    if (!nonneg(j)) neg_col[j] = col_count++;
  }
  std::vector<int> slack_col(nrows, -1);
  for (int i = 0; i < nrows; ++i)
    if (p.rows[i].rel != Rel::Eq) slack_col[i] = col_count++;

  Tableau t;
  t.m = nrows;
  t.n_struct = col_count;
  t.a.assign(nrows, std::vector<Rat>(col_count + nrows, Rat(0)));
  t.b.assign(nrows, Rat(0));
  t.basis.assign(nrows, 0);
  std::vector<Rat> row_sign(nrows, Rat(1));
  for (int i = 0; i < nrows; ++i) {
    Rat sign = p.rows[i].b < 0 ? Rat(-1) : Rat(1);
    row_sign[i] = sign;
    for (int j = 0; j < nvar; ++j) {
      Rat v = sign * p.rows[i].a[j];
      t.a[i][pos_col[j]] = v;
      if (neg_col[j] >= 0) t.a[i][neg_col[j]] = -v;
    }
    if (slack_col[i] >= 0)
      t.a[i][slack_col[i]] = sign * (p.rows[i].rel == Rel::Le ? Rat(1) : Rat(-1));
    t.b[i] = sign * p.rows[i].b;
    t.a[i][col_count + i] = 1;  // artificial
    t.basis[i] = col_count + i;
  }

  // Phase 1: minimize the artificial sum.  Artificials never re-enter.
  std::vector<Rat> phase1_cost(col_count + nrows, Rat(0));
  for (int i = 0; i < nrows; ++i) phase1_cost[col_count + i] = 1;
  t.reset_reduced_costs(phase1_cost);
  std::vector<char> allow(col_count + nrows, 0);
  for (int j = 0; j < col_count; ++j) allow[j] = 1;
  for (;;) {
    auto s = t.step(allow);
    if (s == Tableau::StepResult::Optimal) break;
    if (s == Tableau::StepResult::Unbounded)
      throw std::logic_error("lp: phase 1 unbounded");  // impossible: costs >= 0
  }
  LPResult result;
  if (-t.z0 != 0) {  // z0 tracks -objective under our update rule
    result.status = LPStatus::Infeasible;
    return result;
  }
  // Drive remaining artificials out of the basis where possible.
  for (int i = 0; i < nrows; ++i) {
    if (t.basis[i] < col_count) continue;
    int enter = -1;
    for (int j = 0; j < col_count; ++j) {
      if (t.a[i][j] != 0) {
        enter = j;
        break;
      }
    }
    if (enter >= 0) t.pivot(i, enter);
    // A fully zero row is a redundant constraint; its artificial stays basic
    // at value zero and no structural column can ever change it.
  }

  // Phase 2.
  std::vector<Rat> phase2_cost(col_count + nrows, Rat(0));
  for (int j = 0; j < nvar; ++j) {
    Rat cj = p.maximize ? -p.objective[j] : p.objective[j];
    phase2_cost[pos_col[j]] = cj;
    if (neg_col[j] >= 0) phase2_cost[neg_col[j]] = -cj;
  }
  t.reset_reduced_costs(phase2_cost);
  for (;;) {
    auto s = t.step(allow);
    if (s == Tableau::StepResult::Optimal) break;
    if (s == Tableau::StepResult::Unbounded) {
      result.status = LPStatus::Unbounded;
      return result;
    }
  }

  // Primal witness.
  std::vector<Rat> std_x(col_count + nrows, Rat(0));
  for (int i = 0; i < nrows; ++i) std_x[t.basis[i]] = t.b[i];
  result.x.assign(nvar, Rat(0));
  for (int j = 0; j < nvar; ++j) {
    result.x[j] = std_x[pos_col[j]];
    if (neg_col[j] >= 0) result.x[j] -= std_x[neg_col[j]];
  }
  Rat min_value = -t.z0;
  result.value = p.maximize ? -min_value : min_value;

  // Duals: the reduced cost of artificial column i equals -y_i in the
  // standardized problem (its cost is zero in phase 2 and its column was the
  // i-th identity column).
  result.dual.assign(nrows, Rat(0));
  for (int i = 0; i < nrows; ++i) {
    Rat y_std = -t.z[col_count + i];
    Rat y = row_sign[i] * y_std;
    result.dual[i] = p.maximize ? -y : y;
  }

  result.status = LPStatus::Optimal;
  verify_optimal(p, result);
  return result;
}

}  // namespace gqc
