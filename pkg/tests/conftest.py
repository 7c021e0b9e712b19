import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from latt.catalog import enumerate_lattices
from latt.constructions import Expr
from latt.lattice import FiniteLattice, validate

settings.register_profile("latt", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("latt")

SMALL = [lat for n in range(1, 7) for lat in enumerate_lattices(n)]


def relabel(lat: FiniteLattice, perm) -> FiniteLattice:
    """The same lattice with element ``perm[i]`` renamed to ``i``."""
    perm = np.asarray(perm)
    return validate(lat.leq[np.ix_(perm, perm)])


small_lattices = st.sampled_from(SMALL)
nontrivial_lattices = st.sampled_from([lat for lat in SMALL if lat.n >= 2])


@st.composite
def permuted(draw, lattices=small_lattices):
    lat = draw(lattices)
    perm = draw(st.permutations(range(lat.n)))
    return lat, relabel(lat, perm)


_leaf = st.one_of(
    st.builds(lambda k: Expr("chain", (k,)), st.integers(2, 4)),
    st.builds(lambda k: Expr("bool", (k,)), st.integers(1, 2)),
    st.builds(lambda k: Expr("mk", (k,)), st.integers(1, 3)),
    st.just(Expr("n5")),
)


def _node(children):
    return st.one_of(
        st.builds(lambda a, b: Expr("osum", (a, b)), children, children),
        st.builds(lambda a, b: Expr("hsum", (a, b)), children, children),
        st.builds(lambda a, b: Expr("product", (a, b)), children, children),
        st.builds(lambda a: Expr("dual", (a,)), children),
    )


expressions = st.recursive(_leaf, _node, max_leaves=3)


@pytest.fixture
def run_cli(capsys):
    from latt.cli import run

    def go(*argv):
        code = run([str(a) for a in argv])
        out, err = capsys.readouterr()
        return code, out, err

    return go


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
