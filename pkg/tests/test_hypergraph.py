import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import FANO
from tripleconf import BudgetExceeded, ValidationError, full_system, make_group
from tripleconf import contains_config, from_triple_system, max_edges_spanned, spanned_triples
from tripleconf.hypergraph import Hypergraph3, dumps, loads, max_edges_naive
from tripleconf.triples import TripleSystem

fano = Hypergraph3(7, tuple(FANO))


def random_hypergraph(rng, n, m):
    edges = set()
    while len(edges) < m:
        edges.add(tuple(sorted(rng.sample(range(n), 3))))
    return Hypergraph3(n, tuple(edges))


def test_from_triple_system_full_z3():
    H = from_triple_system(full_system(make_group([3])))
    assert H.vertex_count == 3
    # (0,0,0) -> {0}; (0,1,1),(1,0,1),(1,1,2)... collapse
    assert (0,) in H.edges
    assert set(H.edges) == {(0,), (0, 1), (0, 2), (0, 1, 2), (1, 2)}


def test_from_triple_system_examples():
    g = make_group([5])
    assert from_triple_system(TripleSystem.from_edges(g, [])).edges == ()
    assert from_triple_system(TripleSystem.from_edges(g, [(1, 2)])).edges == ((1, 2, 3),)


def test_spanned_triples_examples():
    S = full_system(make_group([5]))
    assert spanned_triples(S, {0}) == [(0, 0, 0)]
    assert spanned_triples(S, set()) == []
    assert len(spanned_triples(S, range(5))) == 25


def test_fano_max_six():
    # deleting any point of the Fano plane removes exactly its three lines
    assert max_edges_spanned(fano, 6)[0] == 4
    assert max_edges_naive(fano, 6)[0] == 4
    k, witness = max_edges_spanned(fano, 6)
    assert fano.edges_within(witness) == 4 and witness == (0, 1, 2, 3, 4, 5)


def test_disjoint_edges():
    H = Hypergraph3(9, ((0, 1, 2), (3, 4, 5), (6, 7, 8)))
    assert max_edges_spanned(H, 3)[0] == 1


def test_contains_config_examples():
    assert contains_config(fano, 6, 3)[0]
    assert contains_config(fano, 6, 4)[0]
    assert not contains_config(fano, 6, 5)[0]
    single = Hypergraph3(7, ((0, 1, 2),))
    assert not contains_config(single, 6, 3)[0]


def test_good_quadruple_is_a_7_4_configuration():
    g = make_group([11])
    S = full_system(g)
    add = g.add_ranks
    for a, b, c in [(1, 2, 4), (2, 1, 5)]:
        d = g.sub_ranks(add(a, b), c)
        elems = {a, b, c, d, add(c, b), add(a, b), add(a, d)}
        assert len(elems) == 7
        H, _ = from_triple_system(S).induced(elems)
        assert max_edges_spanned(H, 7)[0] >= 4
        assert len(spanned_triples(S, elems)) >= 4


@pytest.mark.parametrize("trial", range(20))
def test_pruned_equals_naive(trial):
    rng = random.Random(trial)
    n = rng.randint(4, 12)
    H = random_hypergraph(rng, n, rng.randint(0, min(20, n * (n - 1) * (n - 2) // 6)))
    m = rng.randint(1, n)
    assert max_edges_spanned(H, m) == max_edges_naive(H, m)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_monotonicity(seed):
    rng = random.Random(seed)
    n = rng.randint(4, 9)
    H = random_hypergraph(rng, n, rng.randint(1, min(12, n * (n - 1) * (n - 2) // 6)))
    m = rng.randint(1, n - 1)
    k = rng.randint(1, 6)
    if contains_config(H, m, k)[0]:
        assert contains_config(H, m, k - 1)[0]
        assert contains_config(H, m + 1, k)[0]


def test_witness_attains_value():
    rng = random.Random(5)
    H = random_hypergraph(rng, 10, 15)
    for m in range(3, 8):
        k, w = max_edges_spanned(H, m)
        assert len(w) == m and H.edges_within(w) == k
        found, w2 = contains_config(H, m, k)
        assert found and H.edges_within(w2) >= k


def test_budget_guards():
    H = from_triple_system(full_system(make_group([40])))
    with pytest.raises(BudgetExceeded):
        max_edges_spanned(H, 30)
    rng = random.Random(1)
    big = random_hypergraph(rng, 30, 60)
    with pytest.raises(BudgetExceeded) as info:
        max_edges_spanned(big, 10, budget=50)
    assert info.value.best is not None


def test_hypergraph_validation():
    with pytest.raises(ValidationError):
        Hypergraph3(3, ((0, 1, 3),))
    with pytest.raises(ValidationError):
        Hypergraph3(3, ((0, 1, 2), (2, 1, 0)))
    with pytest.raises(ValidationError):
        max_edges_spanned(fano, 8)


def test_hypergraph_file_round_trip():
    assert loads(dumps(fano)) == fano
    assert loads("# fano\n7\n0 1 2\n").edges == ((0, 1, 2),)
