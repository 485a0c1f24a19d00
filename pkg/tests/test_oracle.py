import json

import pytest

from conftest import brute_classes, brute_dags, brute_essential
from egcount.equivalence import is_essential_graph
from egcount.graph import Pdag, canonical_key
from egcount.oracle import CapExceeded, OracleCensus, census, enumerate_dags, enumerate_egs


@pytest.mark.parametrize("n, want", [(1, 1), (2, 3), (3, 25), (4, 543)])
def test_enumerate_dags_counts(n, want):
    dags = list(enumerate_dags(n))
    assert len(dags) == want
    assert len(set(dags)) == want


@pytest.mark.parametrize("n", [2, 3, 4])
def test_enumerate_dags_matches_filtering(n):
    got = {frozenset(d.arcs()) for d in enumerate_dags(n)}
    assert got == set(brute_dags(n))


def test_cap():
    with pytest.raises(CapExceeded):
        list(enumerate_dags(6))
    with pytest.raises(CapExceeded):
        census(6)
    with pytest.raises(CapExceeded):
        list(enumerate_egs(0))


def test_census_examples():
    c2 = census(2)
    assert (c2.n_dags, c2.n_cdags, c2.n_egs, c2.n_cegs, c2.n_edags) == (3, 2, 2, 1, 1)
    assert c2.class_size_histogram == {1: 1, 2: 1}
    c3 = census(3)
    assert (c3.n_dags, c3.n_egs, c3.n_edags, c3.n_cdags, c3.n_cegs) == (25, 11, 4, 18, 7)
    c4 = census(4)
    assert (c4.n_dags, c4.n_egs, c4.n_edags, c4.n_cdags) == (543, 185, 59, 446)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_census_histogram_matches_brute_force(n):
    sizes = sorted(len(m) for m in brute_classes(n).values())
    hist = census(n).class_size_histogram
    assert sorted(s for s, k in hist.items() for _ in range(k)) == sizes


@pytest.mark.parametrize("n, want", [(2, 2), (3, 11), (4, 185)])
def test_enumerate_egs(n, want):
    egs = list(enumerate_egs(n))
    assert len(egs) == want
    assert len({canonical_key(g) for g in egs}) == want
    assert all(is_essential_graph(g) for g in egs)
    brute = {canonical_key(Pdag.from_edges(n, *brute_essential(n, m))) for m in brute_classes(n).values()}
    assert {canonical_key(g) for g in egs} == brute


def test_census_json_roundtrip():
    c = census(3)
    obj = json.loads(json.dumps(c.to_json()))
    assert obj["class_size_histogram"] == [[1, 4], [2, 3], [3, 3], [6, 1]]
    assert OracleCensus.from_json(obj) == c


def test_census_invariants_n5():
    c = census(5)
    c.check()
    assert c.n_dags == 29281
    assert (c.n_egs, c.n_edags) == (8782, 2616)
