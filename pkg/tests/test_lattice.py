import itertools
import json

import numpy as np
import pytest
from hypothesis import given

from latt.constructions import boolean, chain, m_kappa, n5
from latt.errors import NotALattice, NotAPartialOrder, NotASublattice, NotComparable, Unbounded
from latt.lattice import dual, from_covers, from_json, interval, is_sublattice, sublattice, to_dot, to_json, validate

from conftest import permuted, small_lattices


def test_chain_basics():
    c = chain(4)
    assert c.n == 4 and c.is_chain()
    assert c.bottom == 0 and c.top == 3
    assert c.covers() == [(0, 1), (1, 2), (2, 3)]
    assert c.heights == (0, 1, 2, 3)


def test_n5_irreducibles():
    lat = n5()
    assert lat.join_irreducibles == {1, 2, 3}
    assert lat.meet_irreducibles == {1, 2, 3}
    assert lat.atoms == {1, 2} and lat.coatoms == {1, 3}


def test_labels_by_height_then_index():
    lat = n5()
    assert lat.labels == ("0", "a1", "a2", "a3", "1")
    assert chain(1).labels == ("0",)


def test_rejects_non_partial_order():
    leq = np.array([[1, 1], [1, 1]], dtype=bool)
    with pytest.raises(NotAPartialOrder):
        validate(leq)


def test_rejects_unbounded():
    leq = np.eye(2, dtype=bool)
    with pytest.raises((Unbounded, NotALattice)):
        validate(leq)


def test_rejects_missing_join():
    # 0 < a, b < c, d < 1 with no least upper bound for a, b
    covers = [(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)]
    with pytest.raises(NotALattice):
        from_covers(6, covers)


def test_interval_and_sublattice():
    b3 = boolean(3)
    top_half = interval(b3, 1, 7)
    assert top_half.n == 4
    with pytest.raises(NotComparable):
        interval(b3, 1, 2)
    sub, elems = sublattice(b3, [0, 1, 2, 3])
    assert sub.n == 4 and elems == [0, 1, 2, 3]
    assert not is_sublattice(b3, [0, 1, 2, 7])
    with pytest.raises(NotASublattice):
        sublattice(b3, [0, 1, 2, 7])


def test_json_round_trip_is_byte_stable():
    lat = m_kappa(3)
    text = to_json(lat)
    assert to_json(from_json(text)) == text
    assert json.loads(text) == {"n": 5, "covers": [[0, 1], [0, 2], [0, 3], [1, 4], [2, 4], [3, 4]]}


def test_dot_has_every_cover():
    dot = to_dot(n5())
    assert dot.startswith("digraph")
    assert all(f"{a} -> {b}" in dot for a, b in n5().covers())


@given(small_lattices)
def test_meet_join_laws(lat):
    m, j = lat.meet_rows, lat.join_rows
    for x, y in itertools.product(range(lat.n), repeat=2):
        assert m[x][y] == m[y][x] and j[x][y] == j[y][x]
        assert m[x][j[x][y]] == x and j[x][m[x][y]] == x
        assert lat.le(x, y) == (m[x][y] == x) == (j[x][y] == y)


@given(small_lattices)
def test_dual_involution(lat):
    d = dual(lat)
    assert dual(d) == lat
    assert d.bottom == lat.top and d.top == lat.bottom
    assert d.join_irreducibles == lat.meet_irreducibles


@given(small_lattices)
def test_covers_generate_the_order(lat):
    assert from_covers(lat.n, lat.covers()) == lat


@given(permuted())
def test_relabelling_keeps_counts(pair):
    a, b = pair
    assert len(a.covers()) == len(b.covers())
    assert sorted(a.heights) == sorted(b.heights)
    assert len(a.join_irreducibles) == len(b.join_irreducibles)


def test_elements_by_label_matches_labels():
    for lat in (n5(), boolean(3), chain(1)):
        names = [lat.labels[x] for x in lat.elements_by_label()]
        assert names[0] == "0" and (lat.n == 1 or names[-1] == "1")
        assert names[1:-1] == [f"a{i}" for i in range(1, lat.n - 1)]
