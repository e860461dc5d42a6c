#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gqc/bitvec.hpp"
#include "gqc/oracle.hpp"
#include "gqc/rational.hpp"
#include "gqc/rng.hpp"

namespace gqc {

// Repetition constant of the count estimator: r = ceil(c_est * ln(1/delta))
// queries per subsampling level.  The source bound is asymptotic; this value
// is validated empirically against the good-estimate definition.
inline constexpr int kCountEstReps = 8;
// Test-count constant of the Bernoulli recovery design:
// k = ceil(c_design * d * (ln l + ln(1/delta))).
inline constexpr int kDesignTests = 3;

// OR-query access to the Boolean submatrix [A(R,S)]>0, one master query per
// batched OR.  R and S must be disjoint.
class BatchedOrOracle {
 public:
  BatchedOrOracle(MasterOracle& base, std::vector<int> rows, std::vector<int> cols);

  const std::vector<int>& rows() const { return rows_; }
  const std::vector<int>& cols() const { return cols_; }
  MasterOracle& base() { return base_; }

  // OR over the selected columns (local indices into cols()), one bit per row.
  BitVec batched_or(const std::vector<int>& selected_cols);

  // Checked variant taking a vertex indicator; rejects support outside S.
  BitVec batched_or_vertices(const BitVec& v);

 private:
  BitVec answer_from_query(const BitVec& x);

  MasterOracle& base_;
  std::vector<int> rows_;
  std::vector<int> cols_;
  BitVec col_mask_;
};

// Per-row count estimate; good when b(i) <= c(i) <= 2 b(i) against the true
// row counts c.  b(i) = 0 asserts c(i) = 0 (the full-support level answers
// deterministically).
struct CountEstimate {
  std::vector<Rat> b;
};

CountEstimate estimate_row_counts(BatchedOrOracle& oracle, double delta, Rng& rng);

// Bernoulli group-testing design: entries are 1 with probability 1/(d+1),
// k = ceil(c_design * d * (ln l + ln(1/delta))) tests, reproducible from seed.
struct RecoveryDesign {
  std::uint64_t seed = 0;
  int l = 0;
  int d = 0;
  double delta = 0.0;
  int k = 0;
  std::vector<std::vector<int>> tests;  // per test: sorted item indices in [0, l)
};

RecoveryDesign build_design(int l, int d, double delta, std::uint64_t seed);

// Per-row decode of the k design tests (k master queries).  COMP eliminates
// every item that appears in a negative test; DD confirms an item when some
// positive test contains no other surviving item.  Rows where survivors
// remain unconfirmed are flagged failed; the flag is a value, not an error.
struct RowRecovery {
  std::vector<int> support;  // local design-item indices, sorted
  bool failed = false;
};

std::vector<RowRecovery> recover_rows(BatchedOrOracle& oracle, const RecoveryDesign& design,
                                      const std::vector<int>& design_cols);

// Distinct values among `count` independent uniform draws from S.
std::vector<int> sample_with_replacement(const std::vector<int>& s, long long count,
                                         std::uint64_t seed);

}  // namespace gqc
