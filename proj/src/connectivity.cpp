#include "gqc/connectivity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace gqc {

int recover_sparsity_cap(int n, double delta) {
  return static_cast<int>(std::ceil(64.0 * std::log(3.0 * std::max(2, n) / delta)));
}

namespace {

// Bucket index i with estimate in (2^(i-1), 2^i], clamped to i >= 1.
int bucket_of(const Rat& b) {
  int i = 1;
  Rat top = 2;
  while (b > top) {
    top *= 2;
    ++i;
  }
  return i;
}

}  // namespace

RecoverResult recover_one_from_all(MasterOracle& oracle, const std::vector<int>& r_set,
                                   const std::vector<int>& s_set, double delta, Rng& rng) {
  if (delta <= 0.0 || delta >= 1.0)
    throw std::invalid_argument("recover_one_from_all: delta must be in (0,1)");
  RecoverResult result;
  if (r_set.empty() || s_set.empty()) return result;

  const long long calls_before = oracle.master_calls();
  const int n = oracle.n();
  const double log_n = std::log(static_cast<double>(std::max(2, n)));
  const double delta_inner = delta / 3.0;

  BatchedOrOracle batched(oracle, r_set, s_set);  // validates disjointness
  CountEstimate est = estimate_row_counts(batched, delta_inner, rng);

  // Bucket rows by estimate; zero-estimate rows are genuinely empty and drop.
  std::map<int, std::vector<int>> buckets;  // bucket index -> row positions
  for (std::size_t i = 0; i < r_set.size(); ++i)
    if (est.b[i] > 0) buckets[bucket_of(est.b[i])].push_back(static_cast<int>(i));

  const int s_size = static_cast<int>(s_set.size());
  const int d_cap = recover_sparsity_cap(n, delta);
  std::vector<int> local_cols(s_size);
  for (int i = 0; i < s_size; ++i) local_cols[i] = i;

  for (const auto& [bucket, row_positions] : buckets) {
    long long draws = static_cast<long long>(
        std::ceil(32.0 * s_size * log_n / std::ldexp(1.0, bucket)));
    draws = std::min<long long>(n, draws);
    std::vector<int> sampled =
        sample_with_replacement(local_cols, draws, rng.next_u64());
    const int l = static_cast<int>(sampled.size());
    if (l == 0) continue;

    // Learned restricted supports, as local indices into `sampled`.
    std::vector<std::vector<int>> support(r_set.size());
    std::vector<char> failed(r_set.size(), 0);

    int d = std::min({1 << std::min(30, bucket + 1), d_cap, l});
    long long design_tests = static_cast<long long>(std::ceil(
        kDesignTests * static_cast<double>(d) * (std::log(static_cast<double>(l)) +
                                                 std::log(1.0 / delta_inner))));
    if (design_tests >= l) {
      // One query per sampled column learns the submatrix exactly.
      for (int c = 0; c < l; ++c) {
        BitVec ans = batched.batched_or({sampled[c]});
        for (int row : row_positions)
          if (ans.get(row)) support[row].push_back(c);
      }
    } else {
      RecoveryDesign design = build_design(l, d, delta_inner, rng.next_u64());
      std::vector<RowRecovery> rec = recover_rows(batched, design, sampled);
      for (int row : row_positions) {
        support[row] = std::move(rec[row].support);
        failed[row] = rec[row].failed;
      }
    }

    for (int row : row_positions) {
      if (failed[row]) {
        result.failed_rows.push_back(r_set[row]);
        continue;
      }
      if (!support[row].empty()) {
        int col_vertex = s_set[sampled[support[row].front()]];
        for (int c : support[row])
          col_vertex = std::min(col_vertex, s_set[sampled[c]]);
        result.pairs.emplace_back(r_set[row], col_vertex);
      }
    }
  }

  std::sort(result.pairs.begin(), result.pairs.end());
  std::sort(result.failed_rows.begin(), result.failed_rows.end());
  result.master_queries_used = oracle.master_calls() - calls_before;
  return result;
}

SpanningForestConfig SpanningForestConfig::standard(int n, std::uint64_t seed) {
  SpanningForestConfig cfg;
  int lg = n >= 1 ? ceil_log2_int(n) : 0;
  cfg.rounds = 3 * (lg + 10);
  cfg.delta_round = 1.0 / (300.0 * (lg + 10));
  cfg.seed = seed;
  return cfg;
}

namespace {

Forest run_spanning_forest(MasterOracle& oracle, const SpanningForestConfig& config,
                           const RoundObserver& observer) {
  const int n = oracle.n();
  DisjointSets partition(n);
  Forest forest;
  Rng coin_rng(derive_seed(config.seed, 0x636f696eULL));
  Rng recover_rng(derive_seed(config.seed, 0x7265636f766572ULL));

  for (int round = 1; round <= config.rounds; ++round) {
    if (observer) observer(round, partition);

    std::vector<int> reds, blues;
    for (int root : partition.roots()) {
      bool red = coin_rng.coin();
      auto& side = red ? reds : blues;
      for (int v : partition.elts(root)) side.push_back(v);
    }
    std::sort(reds.begin(), reds.end());
    std::sort(blues.begin(), blues.end());

    RecoverResult round_edges =
        recover_one_from_all(oracle, reds, blues, config.delta_round, recover_rng);

    // One outgoing edge per red set, lexicographically smallest pair; the
    // union-find guard keeps the forest acyclic no matter what the inner
    // recovery returned.
    std::map<int, std::pair<int, int>> chosen;  // red root -> edge
    for (const auto& [i, j] : round_edges.pairs) {
      int root = partition.find(i);
      auto it = chosen.find(root);
      if (it == chosen.end() || std::make_pair(i, j) < it->second)
        chosen[root] = {i, j};
    }
    for (const auto& [root, edge] : chosen) {
      if (partition.unite(edge.first, edge.second)) forest.push_back(edge);
    }
  }
  return forest;
}

}  // namespace

Forest find_spanning_forest(MasterOracle& oracle, const SpanningForestConfig& config,
                            const RoundObserver& observer) {
  return run_spanning_forest(oracle, config, observer);
}

std::vector<int> rounds_progress_trace(const WeightedGraph& g, MasterOracle& oracle,
                                       const SpanningForestConfig& config, Forest* forest_out) {
  std::vector<int> trace;
  auto observer = [&](int, DisjointSets& partition) {
    std::vector<char> has_outgoing(g.n() + 1, 0);
    for (const auto& [e, w] : g.edges()) {
      int ru = partition.find(e.first);
      int rv = partition.find(e.second);
      if (ru != rv) {
        has_outgoing[ru] = 1;
        has_outgoing[rv] = 1;
      }
    }
    int q = 0;
    for (int v = 1; v <= g.n(); ++v) q += has_outgoing[v];
    trace.push_back(q);
  };
  Forest f = run_spanning_forest(oracle, config, observer);
  if (forest_out) *forest_out = std::move(f);
  return trace;
}

}  // namespace gqc
