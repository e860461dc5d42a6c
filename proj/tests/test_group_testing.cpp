#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gqc/group_testing.hpp"
#include "gqc/graph.hpp"
#include "gqc/rng.hpp"

using namespace gqc;

namespace {

// Hidden bipartite graph realizing a Boolean matrix: row i -> vertex i+1,
// column j -> vertex m+j+1.
struct MatrixFixture {
  int m, l;
  std::vector<std::vector<char>> b;
  std::unique_ptr<QueryOracle> oracle;
  std::unique_ptr<NativeMasterOracle> master;
  std::vector<int> rows, cols;

  MatrixFixture(const std::vector<std::vector<char>>& matrix)
      : m(static_cast<int>(matrix.size())),
        l(m == 0 ? 0 : static_cast<int>(matrix[0].size())),
        b(matrix) {
    std::vector<std::tuple<int, int, Rat>> edges;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < l; ++j)
        if (b[i][j]) edges.emplace_back(i + 1, m + j + 1, Rat(1));
    oracle = std::make_unique<QueryOracle>(make_graph(std::max(1, m + l), edges),
                                           std::vector<QueryModel>{QueryModel::Master});
    master = std::make_unique<NativeMasterOracle>(*oracle);
    for (int i = 0; i < m; ++i) rows.push_back(i + 1);
    for (int j = 0; j < l; ++j) cols.push_back(m + j + 1);
  }

  BatchedOrOracle batched() { return BatchedOrOracle(*master, rows, cols); }
  int true_count(int i) const {
    int c = 0;
    for (char v : b[i]) c += v;
    return c;
  }
};

std::vector<std::vector<char>> random_matrix(int m, int l, double density, Rng& rng) {
  std::vector<std::vector<char>> b(m, std::vector<char>(l, 0));
  for (auto& row : b)
    for (auto& cell : row) cell = rng.bernoulli(density);
  return b;
}

bool is_good(const Rat& b, int c) {
  if (b == 0) return c == 0;
  return b <= c && Rat(c) <= 2 * b;
}

}  // namespace

TEST_CASE("batched_or basics") {
  // P3 with R = {1,3}, S = {2}.
  WeightedGraph p3 = make_graph(3, {{1, 2, Rat(1)}, {2, 3, Rat(1)}});
  QueryOracle o(p3, {QueryModel::Master});
  NativeMasterOracle master(o);
  BatchedOrOracle batched(master, {1, 3}, {2});
  BitVec ans = batched.batched_or({0});
  CHECK(ans.get(0));
  CHECK(ans.get(1));
  CHECK(o.ledger().count(QueryModel::Master) == 1);

  CHECK_FALSE(batched.batched_or({}).any());

  WeightedGraph tri = make_graph(3, {{1, 2, Rat(1)}, {2, 3, Rat(1)}, {1, 3, Rat(1)}});
  QueryOracle ot(tri, {QueryModel::Master});
  NativeMasterOracle mt(ot);
  BatchedOrOracle bt(mt, {1}, {2, 3});
  CHECK(bt.batched_or({1}).get(0));  // edge 1-3

  CHECK_THROWS_AS(BatchedOrOracle(mt, {1, 2}, {2, 3}), std::invalid_argument);
  BitVec outside(4);
  outside.set(1);
  CHECK_THROWS_AS(bt.batched_or_vertices(outside), std::invalid_argument);
}

TEST_CASE("batched_or matches the hidden matrix on random inputs") {
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    MatrixFixture fx(random_matrix(8, 12, 0.3, rng));
    auto batched = fx.batched();
    for (int q = 0; q < 30; ++q) {
      std::vector<int> sel;
      for (int j = 0; j < fx.l; ++j)
        if (rng.coin()) sel.push_back(j);
      BitVec ans = batched.batched_or(sel);
      for (int i = 0; i < fx.m; ++i) {
        bool expect = false;
        for (int j : sel) expect = expect || fx.b[i][j];
        CHECK(ans.get(i) == expect);
      }
    }
  }
}

TEST_CASE("estimate_row_counts: exact cases") {
  // A zero row estimates 0, always.
  MatrixFixture fx({{0, 0, 0, 0}, {1, 0, 1, 0}});
  for (int rep = 0; rep < 20; ++rep) {
    Rng rng(rep);
    auto batched = fx.batched();
    CountEstimate est = estimate_row_counts(batched, 0.25, rng);
    CHECK(est.b[0] == 0);
    CHECK(est.b[1] > 0);
  }

  // |S| = 1 with a single one is decided by the deterministic full-support
  // level alone.
  MatrixFixture one(std::vector<std::vector<char>>{{1}});
  Rng rng(5);
  auto batched_one = one.batched();
  CountEstimate est = estimate_row_counts(batched_one, 0.25, rng);
  CHECK(est.b[0] == 1);
  CHECK(one.oracle->ledger().count(QueryModel::Master) == 1);
}

TEST_CASE("estimate_row_counts: all-ones row over 8 columns is good") {
  MatrixFixture fx({{1, 1, 1, 1, 1, 1, 1, 1}});
  int good = 0;
  const int trials = 60;
  for (int rep = 0; rep < trials; ++rep) {
    Rng rng(1000 + rep);
    auto batched = fx.batched();
    CountEstimate est = estimate_row_counts(batched, 0.2, rng);
    good += is_good(est.b[0], 8);
  }
  CHECK(good >= trials * 3 / 4);
}

TEST_CASE("estimate_row_counts: query budget") {
  Rng rng(9);
  for (double delta : {0.3, 0.05, 0.01}) {
    MatrixFixture fx(random_matrix(6, 64, 0.4, rng));
    auto batched = fx.batched();
    estimate_row_counts(batched, delta, rng);
    long long used = fx.oracle->ledger().count(QueryModel::Master);
    long long bound = static_cast<long long>(kCountEstReps) *
                      (ceil_log2_int(64) + 1) *
                      static_cast<long long>(std::ceil(std::log(1.0 / delta)));
    CHECK(used <= bound);
  }
}

TEST_CASE("estimate_row_counts: monte carlo goodness on random rows") {
  // Smaller-scale preview of the acceptance gate: failure rate stays within a
  // few sigma of the configured budget.
  const double delta = 0.2;
  const int trials = 400;
  int failures = 0;
  for (int rep = 0; rep < trials; ++rep) {
    Rng rng(50000 + rep);
    MatrixFixture fx(random_matrix(1, 64, rng.unit(), rng));
    auto batched = fx.batched();
    CountEstimate est = estimate_row_counts(batched, delta, rng);
    failures += !is_good(est.b[0], fx.true_count(0));
  }
  double sigma = std::sqrt(delta * (1 - delta) * trials);
  CHECK(failures <= delta * trials + 3 * sigma);
}

TEST_CASE("build_design shapes and determinism") {
  RecoveryDesign d1 = build_design(1, 1, 0.25, 7);
  CHECK(d1.k >= 1);

  RecoveryDesign d = build_design(64, 4, 1.0 / 64, 42);
  long long expected_k = static_cast<long long>(
      std::ceil(kDesignTests * 4 * (std::log(64.0) + std::log(64.0))));
  CHECK(d.k == expected_k);

  RecoveryDesign d_again = build_design(64, 4, 1.0 / 64, 42);
  CHECK(d.tests == d_again.tests);
  RecoveryDesign d_other = build_design(64, 4, 1.0 / 64, 43);
  CHECK(d.tests != d_other.tests);

  CHECK_THROWS_AS(build_design(4, 5, 0.1, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_design(0, 1, 0.1, 0), std::invalid_argument);
}

TEST_CASE("recover_rows: zero row decodes empty without failure") {
  MatrixFixture fx({{0, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 1, 0}});
  auto batched = fx.batched();
  RecoveryDesign design = build_design(6, 2, 0.1, 3);
  std::vector<int> all_cols = {0, 1, 2, 3, 4, 5};
  auto recovered = recover_rows(batched, design, all_cols);
  CHECK(recovered[0].support.empty());
  CHECK_FALSE(recovered[0].failed);
  CHECK(fx.oracle->ledger().count(QueryModel::Master) == design.k);
}

TEST_CASE("recover_rows: single column with a one decodes whenever tested") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RecoveryDesign design = build_design(1, 1, 0.2, seed);
    bool covered = false;
    for (const auto& test : design.tests) covered = covered || !test.empty();
    MatrixFixture fx(std::vector<std::vector<char>>{{1}});
    auto batched = fx.batched();
    auto rec = recover_rows(batched, design, {0});
    if (covered) {
      CHECK(rec[0].support == std::vector<int>{0});
      CHECK_FALSE(rec[0].failed);
    }
  }
}

TEST_CASE("recover_rows: monte carlo exactness and zero DD false positives") {
  const int l = 256, d = 4;
  const double delta = 1.0 / 16;
  const int trials = 300;
  int exact = 0;
  long long dd_false_positives = 0;
  for (int rep = 0; rep < trials; ++rep) {
    Rng rng(90000 + rep);
    std::vector<std::vector<char>> b(1, std::vector<char>(l, 0));
    int sparsity = static_cast<int>(rng.below(d + 1));
    std::vector<int> support;
    while (static_cast<int>(support.size()) < sparsity) {
      int j = static_cast<int>(rng.below(l));
      if (!b[0][j]) {
        b[0][j] = 1;
        support.push_back(j);
      }
    }
    std::sort(support.begin(), support.end());
    MatrixFixture fx(b);
    auto batched = fx.batched();
    RecoveryDesign design = build_design(l, d, delta, rng.next_u64());
    CHECK(design.k < l);  // genuinely sub-exhaustive regime
    std::vector<int> all_cols(l);
    for (int j = 0; j < l; ++j) all_cols[j] = j;
    auto recovered = recover_rows(batched, design, all_cols);
    if (!recovered[0].failed && recovered[0].support == support) ++exact;
    for (int item : recovered[0].support) dd_false_positives += !b[0][item];
  }
  CHECK(dd_false_positives == 0);
  double sigma = std::sqrt(delta * (1 - delta) * trials);
  CHECK(exact >= trials - (delta * trials + 3 * sigma));
}

TEST_CASE("sample_with_replacement basics") {
  CHECK(sample_with_replacement({5, 6, 7}, 0, 1).empty());
  CHECK(sample_with_replacement({42}, 5, 9) == std::vector<int>{42});
  CHECK_THROWS_AS(sample_with_replacement({}, 3, 0), std::invalid_argument);
  CHECK(sample_with_replacement({1, 2, 3, 4}, 10, 3) ==
        sample_with_replacement({1, 2, 3, 4}, 10, 3));
}

TEST_CASE("sample_with_replacement: hit-rate bounds") {
  // Rows with t/8 <= ones <= 2t all get hit by a sample of size
  // 8 l ln(k/delta) / t, and none exceeds 64 ln(k/delta) hits, at miss rate
  // within the budget.
  const int l = 64, t = 8, k = 20;
  const double delta = 0.1;
  Rng rng(321);
  std::vector<std::vector<char>> rows(k, std::vector<char>(l, 0));
  for (int i = 0; i < k; ++i) {
    int ones = t / 8 + static_cast<int>(rng.below(2 * t - t / 8 + 1));
    for (int placed = 0; placed < ones;) {
      int j = static_cast<int>(rng.below(l));
      if (!rows[i][j]) {
        rows[i][j] = 1;
        ++placed;
      }
    }
  }
  long long draws = static_cast<long long>(std::ceil(8.0 * l * std::log(k / delta) / t));
  double hit_cap = 64.0 * std::log(k / delta);
  const int trials = 300;
  int miss_events = 0, overflow_events = 0;
  std::vector<int> universe(l);
  for (int j = 0; j < l; ++j) universe[j] = j;
  for (int rep = 0; rep < trials; ++rep) {
    auto sample = sample_with_replacement(universe, draws, 777 + rep);
    bool miss = false, overflow = false;
    for (int i = 0; i < k; ++i) {
      int hits = 0;
      for (int j : sample) hits += rows[i][j];
      miss = miss || hits == 0;
      overflow = overflow || hits > hit_cap;
    }
    miss_events += miss;
    overflow_events += overflow;
  }
  double sigma = std::sqrt(delta * (1 - delta) * trials);
  CHECK(miss_events <= delta * trials + 3 * sigma);
  CHECK(overflow_events <= delta * trials + 3 * sigma);
}
