"""End-to-end smoke tests for the python module."""

import pytest

import gqc


def test_graph_construction_and_queries():
    g = gqc.make_graph(3, [(1, 2, "1"), (2, 3, "1/2")])
    assert g.n == 3
    assert g.edge_count == 2
    assert g.weight(2, 3) == "1/2"
    assert g.weight(1, 3) == "0"
    assert gqc.component_count(g) == 1

    with pytest.raises(ValueError):
        gqc.make_graph(2, [(1, 1, "1")])


def test_generate_families():
    c8 = gqc.generate("cycle", 8)
    assert c8.edge_count == 8
    assert gqc.component_count(gqc.generate("disjoint_union(3,5)", 8)) == 2
    er = gqc.generate("erdos_renyi(0.5)", 16, seed=42)
    assert er.edges() == gqc.generate("erdos_renyi(0.5)", 16, seed=42).edges()


def test_min_cut_and_forest_verifier():
    c4 = gqc.generate("cycle", 4)
    value, shore = gqc.min_cut_brute(c4)
    assert value == "2"
    assert len(shore) >= 1
    assert gqc.is_spanning_forest(c4, [(1, 2), (2, 3), (3, 4)])
    assert not gqc.is_spanning_forest(c4, [(1, 2)])


def test_spanning_forest_end_to_end():
    g = gqc.generate("erdos_renyi(0.25)", 48, seed=5)
    session = gqc.Session(g, model="master", seed=9)
    forest = session.find_spanning_forest(seed=9)
    assert gqc.is_spanning_forest(g, forest)
    ledger = session.ledger()
    assert ledger["master"] == session.master_calls()
    assert ledger["master"] > 0


def test_cut_quantum_model_charges_cut_queries():
    g = gqc.generate("cycle", 16)
    session = gqc.Session(g, model="cut-quantum", seed=3)
    forest = session.find_spanning_forest(seed=3)
    assert gqc.is_spanning_forest(g, forest)
    ledger = session.ledger()
    assert ledger["master"] == 0
    assert ledger["cut"] > 0
    assert ledger["cut"] % session.master_calls() == 0


def test_recover_one_from_all():
    g = gqc.make_graph(3, [(1, 2, "1"), (2, 3, "1")])
    session = gqc.Session(g, seed=1)
    result = session.recover_one_from_all([1, 3], [2], delta=0.01)
    assert sorted(result["pairs"]) == [(1, 2), (3, 2)]
    assert result["failed_rows"] == []


def test_one_query_learning():
    g = gqc.generate("erdos_renyi(0.4)", 10, seed=77)
    learned, ledger = gqc.learn_simple_graph_one_query(g)
    assert learned.edges() == g.edges()
    assert ledger["linear"] == 1


def test_certificates():
    c4 = gqc.generate("cycle", 4)
    slots = 6
    identity = [["1" if i == j else "0" for j in range(slots)] for i in range(slots)]
    verdict = gqc.verify_con_cert(identity, c4)
    assert verdict["ok"]
    assert verdict["tau_star"] == "2"

    empty = []
    p3 = gqc.make_graph(3, [(1, 2, "1"), (2, 3, "1")])
    bad = gqc.verify_con_cert(empty, p3)
    assert not bad["ok"]
    assert "counterexample_w" in bad

    assert gqc.verify_at_least_tau(identity, c4, "2")
    assert not gqc.verify_at_least_tau([], c4, "1")


def test_cycle_rank_bound():
    rep = gqc.cycle_rank_check_mn(8, "2")
    assert rep["certified"]
    assert rep["bound"] == "2"
    assert rep["rank_y_prime"] >= 2

    mn = gqc.universal_cut_incidence(4)
    assert len(mn) == 7
    assert gqc.exact_rank([[str(v) for v in row] for row in mn]) == 6
