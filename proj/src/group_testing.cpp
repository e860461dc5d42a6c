#include "gqc/group_testing.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace gqc {

namespace {

// Indices of an i.i.d. Bernoulli(p) subset of [0, l), by geometric skipping.
std::vector<int> bernoulli_subset(int l, double p, Rng& rng) {
  std::vector<int> out;
  if (p <= 0.0 || l == 0) return out;
  if (p >= 1.0) {
    out.resize(l);
    for (int i = 0; i < l; ++i) out[i] = i;
    return out;
  }
  double log_q = std::log1p(-p);
  long long idx = -1;
  for (;;) {
    double u = 1.0 - rng.unit();  // in (0, 1]
    idx += 1 + static_cast<long long>(std::floor(std::log(u) / log_q));
    if (idx >= l) break;
    out.push_back(static_cast<int>(idx));
  }
  return out;
}

}  // namespace

BatchedOrOracle::BatchedOrOracle(MasterOracle& base, std::vector<int> rows,
                                 std::vector<int> cols)
    : base_(base), rows_(std::move(rows)), cols_(std::move(cols)),
      col_mask_(base.n() + 1) {
  BitVec row_mask(base_.n() + 1);
  for (int v : rows_) {
    if (v < 1 || v > base_.n()) throw std::invalid_argument("row vertex out of range");
    row_mask.set(v);
  }
  for (int v : cols_) {
    if (v < 1 || v > base_.n()) throw std::invalid_argument("column vertex out of range");
    if (row_mask.get(v)) throw std::invalid_argument("R and S must be disjoint");
    col_mask_.set(v);
  }
}

BitVec BatchedOrOracle::answer_from_query(const BitVec& x) {
  BitVec reply = base_.master_query(x);
  BitVec out(static_cast<int>(rows_.size()));
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (reply.get(rows_[i])) out.set(static_cast<int>(i));
  return out;
}

BitVec BatchedOrOracle::batched_or(const std::vector<int>& selected_cols) {
  BitVec x(base_.n() + 1);
  for (int c : selected_cols) {
    if (c < 0 || c >= static_cast<int>(cols_.size()))
      throw std::invalid_argument("batched_or: column index out of range");
    x.set(cols_[c]);
  }
  return answer_from_query(x);
}

BitVec BatchedOrOracle::batched_or_vertices(const BitVec& v) {
  if (v.size() != base_.n() + 1)
    throw std::invalid_argument("batched_or: wrong dimension");
  for (int u : v.ones())
    if (!col_mask_.get(u))
      throw std::invalid_argument("batched_or: support outside S");
  return answer_from_query(v);
}

CountEstimate estimate_row_counts(BatchedOrOracle& oracle, double delta, Rng& rng) {
  if (delta <= 0.0 || delta >= 1.0)
    throw std::invalid_argument("estimate_row_counts: delta must be in (0,1)");
  const int m = static_cast<int>(oracle.rows().size());
  const int l = static_cast<int>(oracle.cols().size());
  CountEstimate est;
  est.b.assign(m, Rat(0));
  if (m == 0 || l == 0) return est;

  // Level 0 keeps every column, so it answers "is the row non-zero"
  // deterministically; one query suffices.
  std::vector<int> all(l);
  for (int i = 0; i < l; ++i) all[i] = i;
  BitVec nonzero = oracle.batched_or(all);
  if (!nonzero.any()) return est;  // every row is zero, decided exactly
  if (l == 1) {
    for (int i = 0; i < m; ++i) est.b[i] = nonzero.get(i) ? Rat(1) : Rat(0);
    return est;
  }

  const int reps = static_cast<int>(std::ceil(kCountEstReps * std::log(1.0 / delta)));
  const int t_max = ceil_log2_int(l);
  // positives[i][t-1] = number of positive answers for row i at level t.
  std::vector<std::vector<int>> positives(m, std::vector<int>(t_max, 0));
  for (int t = 1; t <= t_max; ++t) {
    double p = std::ldexp(1.0, -t);
    for (int rep = 0; rep < reps; ++rep) {
      BitVec ans = oracle.batched_or(bernoulli_subset(l, p, rng));
      for (int i = 0; i < m; ++i)
        if (ans.get(i)) ++positives[i][t - 1];
    }
  }

  // Decode: at the stopping level (first level where at most half the answers
  // are positive) invert the subsample-OR response curve p = 1 - (1-2^-t)^c.
  // Levels adjacent to the stopping level contribute inverse-variance
  // weighted estimates.  The output 2c/3 is centered in the valid window
  // [c/2, c] of the good-estimate definition.
  for (int i = 0; i < m; ++i) {
    if (!nonzero.get(i)) continue;  // exact zero row
    int stop = t_max + 1;
    for (int t = 1; t <= t_max; ++t) {
      if (2 * positives[i][t - 1] <= reps) {
        stop = t;
        break;
      }
    }
    double log_c_num = 0.0, weight_sum = 0.0;
    for (int t = std::max(1, stop - 1); t <= std::min(t_max, stop + 1); ++t) {
      int pos = positives[i][t - 1];
      if (pos < 1 || pos > reps - 1) continue;
      double ph = static_cast<double>(pos) / reps;
      double log_q = std::log1p(-std::ldexp(1.0, -t));
      // c_t solves 1 - (1-2^-t)^c = ph; inverse-variance weight in log c.
      double c_t = std::log1p(-ph) / log_q;
      if (!(c_t > 0.0) || !std::isfinite(c_t)) continue;
      double w = reps * (1.0 - ph) / ph * log_q * log_q * c_t * c_t;
      if (!(w > 0.0) || !std::isfinite(w)) continue;
      log_c_num += w * std::log(c_t);
      weight_sum += w;
    }
    double c_hat;
    if (weight_sum > 0.0) {
      c_hat = std::exp(log_c_num / weight_sum);
    } else if (stop == t_max + 1) {
      c_hat = static_cast<double>(l);  // positive at every level
    } else {
      c_hat = std::ldexp(1.0, stop - 1);  // no informative level near the stop
    }
    c_hat = std::min(std::max(c_hat, 1.0), static_cast<double>(l));
    long long scaled = std::llround(c_hat * 4096.0);
    est.b[i] = Rat(2 * scaled, 3 * 4096LL);
  }
  return est;
}

RecoveryDesign build_design(int l, int d, double delta, std::uint64_t seed) {
  if (l < 1) throw std::invalid_argument("build_design: l must be >= 1");
  if (d < 1 || d > l) throw std::invalid_argument("build_design: need 1 <= d <= l");
  if (delta <= 0.0 || delta >= 1.0)
    throw std::invalid_argument("build_design: delta must be in (0,1)");
  RecoveryDesign design;
  design.seed = seed;
  design.l = l;
  design.d = d;
  design.delta = delta;
  design.k = static_cast<int>(
      std::ceil(kDesignTests * d * (std::log(static_cast<double>(l)) + std::log(1.0 / delta))));
  design.k = std::max(design.k, 1);
  Rng rng(derive_seed(seed, 0x64657369676eULL));
  double p = 1.0 / (d + 1);
  design.tests.reserve(design.k);
  for (int j = 0; j < design.k; ++j) design.tests.push_back(bernoulli_subset(l, p, rng));
  return design;
}

std::vector<RowRecovery> recover_rows(BatchedOrOracle& oracle, const RecoveryDesign& design,
                                      const std::vector<int>& design_cols) {
  if (static_cast<int>(design_cols.size()) != design.l)
    throw std::invalid_argument("recover_rows: design size mismatch");
  const int m = static_cast<int>(oracle.rows().size());
  const int l = design.l;

  std::vector<BitVec> answers;  // per test, bits over rows
  answers.reserve(design.k);
  std::vector<int> query;
  for (const auto& test : design.tests) {
    query.clear();
    for (int item : test) query.push_back(design_cols[item]);
    answers.push_back(oracle.batched_or(query));
  }

  // item_tests[item] = tests containing the item.
  std::vector<std::vector<int>> item_tests(l);
  for (int j = 0; j < design.k; ++j)
    for (int item : design.tests[j]) item_tests[item].push_back(j);

  std::vector<RowRecovery> out(m);
  std::vector<char> survives(l);
  for (int i = 0; i < m; ++i) {
    bool any_positive = false;
    for (int j = 0; j < design.k && !any_positive; ++j)
      if (answers[j].get(i)) any_positive = true;
    if (!any_positive) continue;  // all tests negative: empty support, no flag

    int survivor_count = 0;
    for (int item = 0; item < l; ++item) {
      bool alive = true;
      for (int j : item_tests[item]) {
        if (!answers[j].get(i)) {
          alive = false;
          break;
        }
      }
      // Items in no test cannot be distinguished from zero by these answers;
      // they stay unconfirmed and flag the row below if it is non-empty.
      if (item_tests[item].empty()) alive = true;
      survives[item] = alive;
      survivor_count += alive;
    }

    // DD: a positive test whose surviving items reduce to one confirms it.
    std::vector<char> confirmed(l, 0);
    for (int j = 0; j < design.k; ++j) {
      if (!answers[j].get(i)) continue;
      int last = -1, count = 0;
      for (int item : design.tests[j]) {
        if (survives[item]) {
          last = item;
          if (++count > 1) break;
        }
      }
      if (count == 1) confirmed[last] = 1;
    }

    int confirmed_count = 0;
    for (int item = 0; item < l; ++item) {
      if (confirmed[item]) {
        out[i].support.push_back(item);
        ++confirmed_count;
      }
    }
    if (confirmed_count != survivor_count) out[i].failed = true;
  }
  return out;
}

std::vector<int> sample_with_replacement(const std::vector<int>& s, long long count,
                                         std::uint64_t seed) {
  if (count < 0) throw std::invalid_argument("sample_with_replacement: negative count");
  if (count == 0) return {};
  if (s.empty())
    throw std::invalid_argument("sample_with_replacement: empty set with positive count");
  Rng rng(derive_seed(seed, 0x73616d706c65ULL));
  std::set<int> picked;
  for (long long i = 0; i < count; ++i)
    picked.insert(s[static_cast<std::size_t>(rng.below(s.size()))]);
  return std::vector<int>(picked.begin(), picked.end());
}

}  // namespace gqc
