#pragma once

#include <vector>

#include "gqc/rational.hpp"

namespace gqc {

enum class Rel { Le, Ge, Eq };
enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPConstraint {
  std::vector<Rat> a;
  Rel rel = Rel::Eq;
  Rat b;
};

struct LPProblem {
  bool maximize = false;
  std::vector<Rat> objective;
  std::vector<LPConstraint> rows;
  // Per variable: true = x_j >= 0, false = free.  Defaults to non-negative
  // when left empty.
  std::vector<bool> nonneg;
};

struct LPResult {
  LPStatus status = LPStatus::Optimal;
  Rat value;
  std::vector<Rat> x;     // primal witness
  std::vector<Rat> dual;  // one multiplier per constraint row
};

// Dense exact simplex (two phases, Bland's anti-cycling rule).  At an optimum
// the primal and dual witnesses are recomputed against the original problem:
// feasibility of both, equal objective values and complementary slackness are
// checked exactly before returning.
LPResult solve_lp(const LPProblem& p);

}  // namespace gqc
