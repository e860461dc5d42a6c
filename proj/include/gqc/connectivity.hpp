#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "gqc/graph.hpp"
#include "gqc/group_testing.hpp"
#include "gqc/oracle.hpp"

namespace gqc {

// Budget constant for one RecoverOneFromAll call: master queries per call stay
// below c_rofa * (ceil(log2 n) + 1)^3.  Fit empirically; the acceptance suite
// asserts it per run.
inline constexpr int kRofaBudget = 8;

// Sparsity ceiling for submatrix learning, mirroring the 64 ln(k/delta)
// sample bound with the union-budget n-polynomial style argument.
int recover_sparsity_cap(int n, double delta);

struct RecoverResult {
  // One reported pair per recovered row: (i in R, j in S) with A(i,j) > 0
  // unless an inner decode failed for that row.
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> failed_rows;
  long long master_queries_used = 0;
};

// Algorithm: estimate per-row counts, bucket rows by estimate into
// (2^(i-1), 2^i], sample min{n, ceil(32 |S| ln(n) / 2^i)} columns with
// replacement per bucket, then learn each sampled submatrix.  The learning
// step short-circuits to one query per sampled column whenever the Bernoulli
// design would need at least that many tests, which at these problem sizes is
// the common case.
RecoverResult recover_one_from_all(MasterOracle& oracle, const std::vector<int>& r_set,
                                   const std::vector<int>& s_set, double delta, Rng& rng);

struct SpanningForestConfig {
  int rounds = 0;        // T = 3 (ceil(log2 n) + 10)
  double delta_round = 0.0;  // 1 / (300 (ceil(log2 n) + 10))
  std::uint64_t seed = 0;

  static SpanningForestConfig standard(int n, std::uint64_t seed);
};

// Called at the start of every round with the current partition (before the
// coin flips).  Instrumentation for progress traces; the partition may be
// queried via find/elts.
using RoundObserver = std::function<void(int round, DisjointSets& partition)>;

Forest find_spanning_forest(MasterOracle& oracle, const SpanningForestConfig& config,
                            const RoundObserver& observer = nullptr);

inline Forest find_spanning_forest(MasterOracle& oracle, int n, std::uint64_t seed) {
  return find_spanning_forest(oracle, SpanningForestConfig::standard(n, seed));
}

// Same run as find_spanning_forest against an oracle over g, recording
// Q_i = number of partition sets with an outgoing edge at each round start.
std::vector<int> rounds_progress_trace(const WeightedGraph& g, MasterOracle& oracle,
                                       const SpanningForestConfig& config, Forest* forest_out = nullptr);

}  // namespace gqc
