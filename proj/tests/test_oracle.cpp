#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gqc/graph.hpp"
#include "gqc/oracle.hpp"
#include "gqc/rng.hpp"

using namespace gqc;

namespace {

const std::vector<QueryModel> kAll = {QueryModel::Matvec, QueryModel::Master,
                                      QueryModel::Cut,    QueryModel::Cross,
                                      QueryModel::Bis,    QueryModel::Linear};

WeightedGraph path3() { return make_graph(3, {{1, 2, Rat(1)}, {2, 3, Rat(1)}}); }
WeightedGraph triangle() {
  return make_graph(3, {{1, 2, Rat(1)}, {2, 3, Rat(1)}, {1, 3, Rat(1)}});
}

BitVec ind(int n, std::initializer_list<int> vs) {
  BitVec x(n + 1);
  for (int v : vs) x.set(v);
  return x;
}

WeightedGraph random_weighted(int n, double p, Rng& rng) {
  std::vector<std::tuple<int, int, Rat>> edges;
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v)
      if (rng.bernoulli(p))
        edges.emplace_back(u, v, Rat(1 + static_cast<long long>(rng.below(12)),
                                     1 + static_cast<long long>(rng.below(4))));
  return make_graph(n, edges);
}

}  // namespace

TEST_CASE("matvec query") {
  QueryOracle o(path3(), kAll);
  auto r = o.matvec_query(ind(3, {2}));
  CHECK(r[1] == 1);
  CHECK(r[2] == 0);
  CHECK(r[3] == 1);
  CHECK(o.ledger().count(QueryModel::Matvec) == 1);

  auto zero = o.matvec_query(BitVec(4));
  CHECK((zero[1] == 0 && zero[2] == 0 && zero[3] == 0));

  QueryOracle t(triangle(), kAll);
  auto deg = t.matvec_query(ind(3, {1, 2, 3}));
  CHECK((deg[1] == 2 && deg[2] == 2 && deg[3] == 2));
}

TEST_CASE("master query and masking") {
  QueryOracle t(triangle(), kAll);
  BitVec r = t.master_query(ind(3, {1}));
  CHECK_FALSE(r.get(1));
  CHECK(r.get(2));
  CHECK(r.get(3));
  CHECK(t.ledger().count(QueryModel::Master) == 1);

  CHECK_FALSE(t.master_query(ind(3, {1, 2, 3})).any());

  QueryOracle p(path3(), kAll);
  BitVec m = p.master_query(ind(3, {2}));
  CHECK((m.get(1) && !m.get(2) && m.get(3)));

  // Masking: answers vanish on the support of x.
  Rng rng(10);
  WeightedGraph g = random_weighted(12, 0.4, rng);
  QueryOracle o(g, kAll);
  for (int trial = 0; trial < 50; ++trial) {
    BitVec x(13);
    for (int v = 1; v <= 12; ++v)
      if (rng.coin()) x.set(v);
    BitVec ans = o.master_query(x);
    for (int v = 1; v <= 12; ++v)
      if (x.get(v)) CHECK_FALSE(ans.get(v));
  }
}

TEST_CASE("boolean threshold proposition: [Ax]>0 equals [A]>0 or-product") {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    WeightedGraph g = random_weighted(6, 0.5, rng);
    QueryOracle o(g, kAll);
    for (int mask = 0; mask < 64; ++mask) {
      BitVec x(7);
      for (int v = 1; v <= 6; ++v)
        if ((mask >> (v - 1)) & 1) x.set(v);
      auto ax = o.matvec_query(x);
      BitVec or_prod = o.master_answer_uncharged(x);  // boolean route
      for (int v = 1; v <= 6; ++v) {
        bool exact = ax[v] > 0 && !x.get(v);
        CHECK(exact == or_prod.get(v));
      }
    }
  }
}

TEST_CASE("cut query") {
  QueryOracle p(path3(), kAll);
  CHECK(p.cut_query(ind(3, {2})) == 2);
  CHECK(p.cut_query(BitVec(4)) == 0);
  QueryOracle s(make_graph(2, {{1, 2, Rat(5)}}), kAll);
  CHECK(s.cut_query(ind(2, {1})) == 5);
  CHECK(p.ledger().count(QueryModel::Cut) == 2);
}

TEST_CASE("cross query values and accounting") {
  QueryOracle p(path3(), kAll, CrossMode::CutBacked);
  CHECK(p.cross_query(ind(3, {1}), ind(3, {2})) == 1);
  CHECK(p.cross_query(ind(3, {1}), ind(3, {3})) == 0);
  CHECK(p.ledger().count(QueryModel::Cut) == 6);  // 3 per cut-backed cross
  CHECK(p.ledger().count(QueryModel::Cross) == 0);

  QueryOracle t(triangle(), kAll, CrossMode::Native);
  CHECK(t.cross_query(ind(3, {1}), ind(3, {2, 3})) == 2);
  CHECK(t.ledger().count(QueryModel::Cross) == 1);
  CHECK(t.ledger().count(QueryModel::Cut) == 0);

  CHECK_THROWS_AS(t.cross_query(ind(3, {1, 2}), ind(3, {2})), std::invalid_argument);
}

TEST_CASE("cross identity against three cut queries") {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rng.below(10));
    WeightedGraph g = random_weighted(n, 0.5, rng);
    QueryOracle o(g, kAll, CrossMode::Native);
    BitVec y(n + 1), z(n + 1);
    for (int v = 1; v <= n; ++v) {
      auto r = rng.below(3);
      if (r == 0) y.set(v);
      else if (r == 1) z.set(v);
    }
    Rat cross = o.cross_query(y, z);
    BitVec yz(n + 1);
    yz.or_with(y);
    yz.or_with(z);
    // (1-y)^T A y is the cut at y, likewise for z and y+z.
    Rat formula = (o.cut_query(y) + o.cut_query(z) - o.cut_query(yz)) / 2;
    CHECK(cross == formula);
  }
}

TEST_CASE("bis query") {
  QueryOracle p(path3(), kAll);
  CHECK(p.bis_query(ind(3, {1}), ind(3, {2})) == 1);
  CHECK(p.bis_query(ind(3, {1}), ind(3, {3})) == 0);
  CHECK(p.bis_query(BitVec(4), ind(3, {1, 2})) == 0);
  CHECK(p.ledger().count(QueryModel::Bis) == 3);
  CHECK_THROWS_AS(p.bis_query(ind(3, {1}), ind(3, {1})), std::invalid_argument);

  QueryOracle w(make_graph(2, {{1, 2, Rat(1, 2)}}), kAll);
  CHECK_THROWS_AS(w.bis_query(ind(2, {1}), ind(2, {2})), std::logic_error);
}

TEST_CASE("linear query") {
  QueryOracle p(path3(), kAll);
  std::vector<Rat> ones(3, Rat(1));
  CHECK(p.linear_query(ones) == 2);
  std::vector<Rat> zero(3, Rat(0));
  CHECK(p.linear_query(zero) == 0);
  std::vector<Rat> slot13(3, Rat(0));
  slot13[edge_slot_index(1, 3, 3)] = 1;
  CHECK(p.linear_query(slot13) == 0);
  CHECK(p.ledger().count(QueryModel::Linear) == 3);
  CHECK_THROWS_AS(p.linear_query(std::vector<Rat>(2, Rat(0))), std::invalid_argument);
}

TEST_CASE("disabled models throw without charging") {
  QueryOracle o(path3(), {QueryModel::Master});
  CHECK_THROWS_AS(o.cut_query(ind(3, {1})), std::logic_error);
  CHECK_THROWS_AS(o.matvec_query(ind(3, {1})), std::logic_error);
  CHECK(o.ledger().total() == 0);
  o.master_query(ind(3, {1}));
  CHECK(o.ledger().total() == 1);
}

TEST_CASE("master_from_matvec adapter") {
  QueryOracle t(triangle(), {QueryModel::Matvec});
  MatvecMasterAdapter adapter(t);
  BitVec r = adapter.master_query(ind(3, {1}));
  CHECK((!r.get(1) && r.get(2) && r.get(3)));
  CHECK(t.ledger().count(QueryModel::Matvec) == 1);
  CHECK(t.ledger().count(QueryModel::Master) == 0);
  CHECK(adapter.master_calls() == 1);

  CHECK_FALSE(adapter.master_query(ind(3, {1, 2, 3})).any());
  CHECK(t.ledger().count(QueryModel::Matvec) == 2);

  // Positivity invariance: non-unit weights answer like unit weights.
  WeightedGraph w = make_graph(3, {{1, 2, Rat(1, 2)}, {2, 3, Rat(3)}});
  QueryOracle wo(w, {QueryModel::Matvec});
  MatvecMasterAdapter wa(wo);
  QueryOracle uo(path3(), {QueryModel::Matvec});
  MatvecMasterAdapter ua(uo);
  for (int mask = 0; mask < 8; ++mask) {
    BitVec x(4);
    for (int v = 1; v <= 3; ++v)
      if ((mask >> (v - 1)) & 1) x.set(v);
    CHECK(wa.master_query(x) == ua.master_query(x));
  }

  QueryOracle no_mv(path3(), {QueryModel::Master});
  CHECK_THROWS_AS(MatvecMasterAdapter{no_mv}, std::logic_error);
}

TEST_CASE("scale invariance of master answers") {
  Rng rng(77);
  WeightedGraph g = random_weighted(10, 0.4, rng);
  WeightedGraph scaled = g.scaled_by(Rat(7, 3));
  QueryOracle a(g, kAll), b(scaled, kAll);
  for (int trial = 0; trial < 40; ++trial) {
    BitVec x(11);
    for (int v = 1; v <= 10; ++v)
      if (rng.coin()) x.set(v);
    CHECK(a.master_query(x) == b.master_query(x));
  }
}

TEST_CASE("ledger json") {
  QueryOracle o(path3(), kAll);
  o.master_query(ind(3, {1}));
  o.cut_query(ind(3, {1}));
  o.cut_query(ind(3, {2}));
  CHECK(o.ledger().to_json() ==
        R"({"matvec":0,"master":1,"cut":2,"cross":0,"bis":0,"linear":0})");
}
