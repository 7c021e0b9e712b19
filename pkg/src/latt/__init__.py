"""Finite bounded lattices with weak complementations and their duals.

Elements of a lattice with ``n`` elements are the integers ``0..n-1``.
Congruences, weak complementations (``delta``) and dual weak
complementations (``nabla``) are tables indexed by those integers.
"""

from .catalog import enumerate_lattices, generate_lattices, load_catalog, save_catalog
from .congruence import (
    ConLattice,
    Congruence,
    all_congruences,
    con_filtered,
    eq,
    full,
    hsum_congruence,
    identity,
    osum_congruence,
    principal_congruence,
    quotient,
)
from .constructions import (
    Expr,
    boolean,
    build,
    chain,
    evaluate,
    horizontal_sum,
    m_kappa,
    n5,
    ordinal_sum,
    parse,
    product,
)
from .errors import LatticeError
from .fca import FormalContext, concept_algebra, concept_lattice, read_csv, read_cxt, write_cxt
from .iso import are_isomorphic, canonical_form, certificate
from .lattice import FiniteLattice, dual, from_covers, from_json, interval, sublattice, to_dot, to_json, validate
from .shapes import name_shape, pretty
from .wdl import (
    DicompLattice,
    DualWeakComplementation,
    WeakComplementation,
    con_preserving,
    con_wcl,
    con_wdcl,
    con_wdl,
    delta_ab,
    enumerate_dicomplementations,
    enumerate_dual_weak_complementations,
    enumerate_weak_complementations,
    is_representable,
    nabla_ab,
    principal_wcl_congruence,
    smallest_dicomplementation,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
