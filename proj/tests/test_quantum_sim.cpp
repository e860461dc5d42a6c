#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gqc/connectivity.hpp"
#include "gqc/experiment.hpp"
#include "gqc/graph.hpp"
#include "gqc/quantum_sim.hpp"
#include "gqc/rng.hpp"

using namespace gqc;

namespace {
BitVec ind(int n, std::initializer_list<int> vs) {
  BitVec x(n + 1);
  for (int v : vs) x.set(v);
  return x;
}
}  // namespace

TEST_CASE("cut-backed master adapter: cost formula on P3") {
  WeightedGraph p3 = make_graph(3, {{1, 2, Rat(1)}, {2, 3, Rat(1)}});
  QueryOracle o(p3, {QueryModel::Cut, QueryModel::Master});
  CutMasterAdapter adapter(o);
  // M = 2, n = 3, K = 2Mn = 12, each master query costs 3 ceil(log2 12) = 12.
  CHECK(adapter.modulus() == 12);
  CHECK(adapter.cut_charge_per_query() == 12);

  BitVec answer = adapter.master_query(ind(3, {2}));
  CHECK((answer.get(1) && !answer.get(2) && answer.get(3)));
  CHECK(o.ledger().count(QueryModel::Cut) == 12);
  CHECK(o.ledger().count(QueryModel::Master) == 0);

  // All-ones answers zero and is still charged.
  CHECK_FALSE(adapter.master_query(ind(3, {1, 2, 3})).any());
  CHECK(o.ledger().count(QueryModel::Cut) == 24);
  CHECK(adapter.master_calls() == 2);
}

TEST_CASE("cut-backed master adapter matches native answers exhaustively") {
  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 2 + static_cast<int>(rng.below(7));
    std::vector<std::tuple<int, int, Rat>> edges;
    for (int u = 1; u <= n; ++u)
      for (int v = u + 1; v <= n; ++v)
        if (rng.coin()) edges.emplace_back(u, v, Rat(static_cast<long long>(rng.below(4))));
    WeightedGraph g = make_graph(n, edges);
    QueryOracle native(g, {QueryModel::Master});
    QueryOracle cutside(g, {QueryModel::Cut});
    CutMasterAdapter adapter(cutside);
    for (int mask = 0; mask < (1 << n); ++mask) {
      BitVec x(n + 1);
      for (int v = 1; v <= n; ++v)
        if ((mask >> (v - 1)) & 1) x.set(v);
      CHECK(adapter.master_query(x) == native.master_query(x));
    }
  }
}

TEST_CASE("cut adapter rejects fractional weights") {
  WeightedGraph g = make_graph(2, {{1, 2, Rat(1, 2)}});
  QueryOracle o(g, {QueryModel::Cut});
  CHECK_THROWS_AS(CutMasterAdapter{o}, std::invalid_argument);
}

TEST_CASE("bis master adapter: cost formula at n=64") {
  WeightedGraph g = generate(GraphFamily::cycle(), 64, 0);
  QueryOracle o(g, {QueryModel::Bis});
  ChargePolicy policy;  // c_or = 2, c_rep = 1
  BisMasterAdapter adapter(o, policy, 1);
  CHECK(adapter.bis_charge_per_query() == 80);  // ceil(2*8) * ceil(ln 64) = 16*5
  adapter.master_query(ind(64, {1}));
  CHECK(o.ledger().count(QueryModel::Bis) == 80);
}

TEST_CASE("bis master adapter: injection off is bitwise identical") {
  Rng rng(12);
  WeightedGraph g = generate(GraphFamily::erdos_renyi(0.3), 24, 7);
  QueryOracle native(g, {QueryModel::Master});
  QueryOracle bis(g, {QueryModel::Bis});
  BisMasterAdapter adapter(bis, ChargePolicy{}, 99);
  for (int trial = 0; trial < 60; ++trial) {
    BitVec x(25);
    for (int v = 1; v <= 24; ++v)
      if (rng.coin()) x.set(v);
    CHECK(adapter.master_query(x) == native.master_query(x));
  }
  CHECK(adapter.injected_corruptions() == 0);
}

TEST_CASE("bis master adapter: rejects non-simple graphs") {
  WeightedGraph g = make_graph(2, {{1, 2, Rat(2)}});
  QueryOracle o(g, {QueryModel::Bis});
  ChargePolicy policy;
  CHECK_THROWS_AS(BisMasterAdapter(o, policy, 0), std::invalid_argument);
}

TEST_CASE("bis master adapter: injected corruption rate near 1/n^3") {
  const int n = 16;
  WeightedGraph g = generate(GraphFamily::erdos_renyi(0.4), n, 3);
  QueryOracle native(g, {QueryModel::Master});
  QueryOracle bis(g, {QueryModel::Bis});
  ChargePolicy policy;
  policy.inject_failures = true;
  BisMasterAdapter adapter(bis, policy, 2024);
  Rng rng(31337);
  const int queries = 20000;
  int corrupted = 0;
  for (int q = 0; q < queries; ++q) {
    BitVec x(n + 1);
    for (int v = 1; v <= n; ++v)
      if (rng.coin()) x.set(v);
    BitVec a = adapter.master_query(x);
    BitVec b = native.master_query(x);
    corrupted += !(a == b);
  }
  CHECK(corrupted == adapter.injected_corruptions());
  double p = 1.0 / (n * n * n);
  double mean = queries * p;
  double sigma = std::sqrt(queries * p * (1 - p));
  CHECK(corrupted >= mean - 4 * sigma);
  CHECK(corrupted <= mean + 4 * sigma);
}

TEST_CASE("seed-matched runs: cut ledger is an exact multiple of master calls") {
  WeightedGraph g = generate(GraphFamily::cycle(), 32, 0);
  for (std::uint64_t seed : {7u, 8u, 9u}) {
    OracleSession master_run = make_session(g, AlgoModel::Master, seed);
    Forest f1 = find_spanning_forest(*master_run.master, 32, seed);

    OracleSession cut_run = make_session(g, AlgoModel::CutQuantum, seed);
    Forest f2 = find_spanning_forest(*cut_run.master, 32, seed);

    CHECK(f1 == f2);  // identical trajectories
    long long master_calls = master_run.ledger().count(QueryModel::Master);
    CHECK(cut_run.master->master_calls() == master_calls);
    auto* adapter = dynamic_cast<CutMasterAdapter*>(cut_run.master.get());
    REQUIRE(adapter != nullptr);
    CHECK(cut_run.ledger().count(QueryModel::Cut) ==
          adapter->cut_charge_per_query() * master_calls);
  }
}

TEST_CASE("seed-matched runs: bis ledger is an exact multiple of master calls") {
  WeightedGraph g = generate(GraphFamily::erdos_renyi(0.2), 32, 5);
  std::uint64_t seed = 77;
  OracleSession master_run = make_session(g, AlgoModel::Master, seed);
  Forest f1 = find_spanning_forest(*master_run.master, 32, seed);
  OracleSession bis_run = make_session(g, AlgoModel::BisQuantum, seed);
  Forest f2 = find_spanning_forest(*bis_run.master, 32, seed);
  CHECK(f1 == f2);
  auto* adapter = dynamic_cast<BisMasterAdapter*>(bis_run.master.get());
  REQUIRE(adapter != nullptr);
  CHECK(bis_run.ledger().count(QueryModel::Bis) ==
        adapter->bis_charge_per_query() *
            master_run.ledger().count(QueryModel::Master));
}
