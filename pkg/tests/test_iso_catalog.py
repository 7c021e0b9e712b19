import pytest
from hypothesis import given

from latt.catalog import enumerate_lattices, generate_lattices, load_catalog, oracle_lattice_count, save_catalog
from latt.constructions import boolean, chain, horizontal_sum, m_kappa, n5
from latt.iso import algebra_isomorphism, are_isomorphic, automorphism_orbits, canonical_form, certificate, isomorphisms
from latt.lattice import dual
from latt.wdl import delta_tables

from conftest import permuted

KNOWN_COUNTS = [1, 1, 1, 2, 5, 15, 53, 222, 1078]


@given(permuted())
def test_certificate_is_invariant(pair):
    a, b = pair
    assert certificate(a) == certificate(b)
    assert canonical_form(a) == canonical_form(b)
    f = are_isomorphic(a, b)
    assert f is not None
    assert all(a.le(x, y) == b.le(f[x], f[y]) for x in range(a.n) for y in range(a.n))


def test_distinguishes_n5_from_m3():
    assert are_isomorphic(n5(), m_kappa(3)) is None
    assert certificate(n5()) != certificate(m_kappa(3))


def test_automorphisms_of_b2():
    b2 = boolean(2)
    assert len(list(isomorphisms(b2, b2))) == 2
    orbits = automorphism_orbits(b2)
    assert orbits[1] == orbits[2] != orbits[0]


def test_algebra_isomorphism_tracks_operation():
    lat = horizontal_sum(chain(3), chain(3))
    tables = delta_tables(lat)
    assert len(tables) == 2
    assert algebra_isomorphism(lat, [tables[0]], lat, [tables[1]]) is None
    assert algebra_isomorphism(lat, [tables[1]], lat, [tables[1]]) is not None


@pytest.mark.parametrize("n", range(1, 10))
def test_catalog_counts(n):
    assert len(enumerate_lattices(n)) == KNOWN_COUNTS[n - 1]


@pytest.mark.parametrize("n", range(1, 7))
def test_catalog_matches_oracle(n):
    assert oracle_lattice_count(n) == len(enumerate_lattices(n))


@pytest.mark.parametrize("n", range(1, 8))
def test_catalog_is_isomorph_free_and_dual_closed(n):
    certs = [certificate(lat) for lat in enumerate_lattices(n)]
    assert len(set(certs)) == len(certs)
    assert {certificate(dual(lat)) for lat in enumerate_lattices(n)} == set(certs)


def test_generator_is_deterministic():
    first = [lat.covers() for lat in generate_lattices(6)]
    assert first == [lat.covers() for lat in generate_lattices(6)]


def test_catalog_file_round_trip(tmp_path):
    cat = enumerate_lattices(5)
    path = tmp_path / "c5.jsonl"
    save_catalog(cat, path)
    assert [lat.covers() for lat in load_catalog(path)] == [lat.covers() for lat in cat]


def test_cache_dir(tmp_path):
    first = enumerate_lattices(6, cache_dir=tmp_path)
    assert any(tmp_path.iterdir())
    assert [x.covers() for x in enumerate_lattices(6, cache_dir=tmp_path)] == [x.covers() for x in first]


@pytest.mark.parametrize("n", range(1, 7))
def test_catalog_pairwise_non_isomorphic(n):
    lats = list(enumerate_lattices(n))
    for i, a in enumerate(lats):
        for b in lats[i + 1 :]:
            assert are_isomorphic(a, b) is None
