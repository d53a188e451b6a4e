import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tripleconf import InvalidParameter, ParseError, ValidationError, make_group
from tripleconf import full_system, random_system, restrict
from tripleconf.triples import TripleSystem, dumps, load, loads, save


def test_full_system_counts():
    S = full_system(make_group([3]))
    assert len(S) == 9
    assert sorted(len(v) for v in S.product_index.values()) == [3, 3, 3]
    assert len(full_system(make_group([]))) == 1
    z5 = full_system(make_group([5]))
    assert len(z5) == 25 and z5.density == 1.0


def test_product_index_consistent():
    g = make_group([2, 4])
    S = random_system(g, 0.6, 3)
    total = 0
    for p, bucket in S.product_index.items():
        total += len(bucket)
        for a, b in bucket:
            assert g.add_ranks(a, b) == p
        assert bucket == sorted(bucket)
    assert total == len(S)


def test_random_system_size_and_determinism():
    g = make_group([10])
    assert len(random_system(g, 0.5, 0)) == 50
    assert len(random_system(g, 0.5, 123)) == 50
    assert len(random_system(g, 0.0, 1)) == 0
    assert random_system(g, 0.5, 7) == random_system(g, 0.5, 7)
    assert len(random_system(make_group([2, 5]), 0.4, 1)) == 40


def test_random_system_documented_algorithm():
    import random

    g = make_group([6])
    cells = sorted(random.Random(11).sample(range(36), 18))
    assert random_system(g, 0.5, 11).edge_list() == [divmod(c, 6) for c in cells]


@pytest.mark.parametrize("c", [-0.1, 1.5])
def test_random_system_rejects_density(c):
    with pytest.raises(InvalidParameter):
        random_system(make_group([4]), c, 0)


def test_restrict_examples():
    S = full_system(make_group([5]))
    assert restrict(S, None, None, ()) == S
    assert restrict(S, range(5), range(5), ()) == S
    assert len(restrict(S, None, None, {0})) == 20
    assert len(restrict(S, set(), None, ())) == 0


def test_restrict_keeps_exactly_the_right_edges():
    g = make_group([3, 3])
    S = random_system(g, 0.7, 5)
    left, right, forb = {0, 2, 4, 8}, {1, 2, 3, 7}, {0, 5}
    R = restrict(S, left, right, forb)
    expected = {(a, b) for a, b in S.edges if a in left and b in right and g.add_ranks(a, b) not in forb}
    assert R.edges == expected


@settings(max_examples=40)
@given(
    st.integers(2, 12),
    st.floats(0, 1),
    st.integers(0, 1000),
    st.sets(st.integers(0, 11)),
    st.sets(st.integers(0, 11)),
    st.sets(st.integers(0, 11)),
)
def test_restrict_idempotent_and_monotone(n, c, seed, left, right, forb):
    S = random_system(make_group([n]), c, seed)
    left, right, forb = ({x for x in s if x < n} for s in (left, right, forb))
    R = restrict(S, left, right, forb)
    assert restrict(R, left, right, forb) == R
    assert R.edges <= S.edges
    assert 0 <= S.density <= 1


def test_save_load_round_trip(tmp_path):
    for orders in ([6], [2, 3], []):
        S = full_system(make_group(orders))
        path = tmp_path / "s.txt"
        save(S, path)
        assert load(path) == S
    S = random_system(make_group([3, 4]), 0.3, 9)
    assert loads(dumps(S)) == S


def test_load_comments_and_blank_lines():
    S = loads("# a comment\nZ3\n\n0 1  # edge\n2 2\n")
    assert S.edges == {(0, 1), (2, 2)}


def test_load_rejects_duplicate():
    with pytest.raises(ValidationError, match="duplicate"):
        loads("Z3\n0 1\n0 1\n")


def test_load_rejects_out_of_range():
    with pytest.raises(ValidationError, match="line 3"):
        loads("Z3\n0 1\n0 3\n")


@pytest.mark.parametrize("text, line", [("Z3\n0 1 2\n", 2), ("Q7\n", 1), ("Z3\n0 x\n", 2), ("", 1)])
def test_load_parse_errors(text, line):
    with pytest.raises(ParseError) as info:
        loads(text)
    assert info.value.line == line


def test_from_edges_validates():
    with pytest.raises(ValidationError):
        TripleSystem.from_edges(make_group([3]), [(0, 3)])
    S = TripleSystem.from_edges(make_group([3]), [(0, 1), (2, 0)])
    assert S.triples() == [(0, 1, 1), (2, 0, 2)]
    assert not S.adjacency.flags.writeable
    assert isinstance(S.adjacency, np.ndarray)
