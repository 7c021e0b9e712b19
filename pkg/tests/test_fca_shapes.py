import numpy as np
import pytest
from hypothesis import given, strategies as st

from latt.constructions import boolean, chain, evaluate, n5
from latt.errors import FormatError
from latt.fca import (
    FormalContext,
    concept_algebra,
    concept_lattice,
    derive_attributes,
    derive_objects,
    phi_map,
    read_csv,
    read_cxt,
    standard_context,
    write_cxt,
)
from latt.iso import are_isomorphic
from latt.shapes import B, C, hsum, name_shape, osum, pretty, prod
from latt.wdl import smallest_dicomplementation

from conftest import SMALL, expressions, small_lattices


@st.composite
def contexts(draw):
    g = draw(st.integers(0, 5))
    m = draw(st.integers(0, 5))
    cells = draw(st.lists(st.booleans(), min_size=g * m, max_size=g * m))
    return FormalContext(
        tuple(f"g{i}" for i in range(g)), tuple(f"m{i}" for i in range(m)), np.array(cells, dtype=bool).reshape(g, m)
    )


subsets = st.sets(st.integers(0, 4))


@given(contexts(), subsets, subsets)
def test_galois_connection(ctx, a, b):
    a = {x for x in a if x < ctx.n_objects}
    b = {x for x in b if x < ctx.n_attributes}
    # A <= B' iff B <= A'
    assert (a <= derive_attributes(ctx, b)) == (b <= derive_objects(ctx, a))
    closed = derive_attributes(ctx, derive_objects(ctx, a))
    assert a <= closed
    assert derive_attributes(ctx, derive_objects(ctx, closed)) == closed


@given(contexts())
def test_concepts_are_closed_pairs(ctx):
    lat, concepts = concept_lattice(ctx)
    assert lat.n == len(concepts) == len({c.extent for c in concepts})
    for c in concepts:
        assert derive_objects(ctx, c.extent) == c.intent
        assert derive_attributes(ctx, c.intent) == c.extent


@given(contexts())
def test_cxt_round_trip(ctx):
    back = read_cxt(write_cxt(ctx))
    assert back.objects == ctx.objects and back.attributes == ctx.attributes
    assert np.array_equal(back.incidence, ctx.incidence)


def test_contranominal_scale_gives_boolean_cube():
    ctx = FormalContext(("a", "b", "c"), ("x", "y", "z"), ~np.eye(3, dtype=bool))
    lat, _ = concept_lattice(ctx)
    assert are_isomorphic(lat, boolean(3)) is not None
    alg, _ = concept_algebra(ctx)
    assert alg.delta.table == alg.nabla.table


def test_n5_context():
    text = "B\n\n3\n3\n\ng1\ng2\ng3\nm1\nm2\nm3\nX..\nXX.\n..X\n"
    lat, concepts = concept_lattice(read_cxt(text))
    assert are_isomorphic(lat, n5()) is not None


def test_csv_context():
    ctx = read_csv(",x,y\na,X,\nb,,X\n")
    assert ctx.objects == ("a", "b") and ctx.attributes == ("x", "y")
    assert are_isomorphic(concept_lattice(ctx)[0], boolean(2)) is not None


@pytest.mark.parametrize("text", ["", "A\n1\n1\ng\nm\nX\n", "B\n\n2\n1\n\ng\nh\nm\nX\n", "B\n\n1\n1\n\ng\nm\nQ\n"])
def test_bad_cxt(text):
    with pytest.raises(FormatError):
        read_cxt(text)


def test_duplicate_labels_rejected():
    with pytest.raises(FormatError):
        FormalContext(("g", "g"), ("m",), np.ones((2, 1), dtype=bool))


@given(small_lattices)
def test_standard_context_recovers_lattice(lat):
    ctx = standard_context(lat)
    clat, concepts = concept_lattice(ctx)
    phi = phi_map(lat, sorted(lat.join_irreducibles), sorted(lat.meet_irreducibles), concepts)
    assert sorted(phi) == list(range(lat.n))
    assert all(lat.le(x, y) == clat.le(phi[x], phi[y]) for x in range(lat.n) for y in range(lat.n))
    alg, _ = concept_algebra(ctx)
    small = smallest_dicomplementation(lat)
    assert all(alg.delta(phi[x]) == phi[small.delta(x)] for x in range(lat.n))
    assert all(alg.nabla(phi[x]) == phi[small.nabla(x)] for x in range(lat.n))


def test_shape_names():
    assert pretty(name_shape(chain(4))) == "C4"
    assert pretty(name_shape(boolean(3))) == "C2^3"
    assert pretty(osum(B(2), C(2))) == "C2^2 (+) C2"
    assert pretty(hsum(C(3), C(4))) == "C3 [+] C4"
    assert pretty(prod(C(2), C(3))) == "C2 x C3"


@given(expressions)
def test_named_shape_is_isomorphic(expr):
    lat = evaluate(expr)
    if lat.n > 40:
        return
    name = name_shape(lat)
    if name is not None:
        assert are_isomorphic(evaluate(name), lat) is not None


@pytest.mark.parametrize("lat", [lat for lat in SMALL if lat.n <= 5], ids=lambda lat: f"n{lat.n}")
def test_small_lattices_are_named(lat):
    name = name_shape(lat)
    assert name is not None and are_isomorphic(evaluate(name), lat) is not None
