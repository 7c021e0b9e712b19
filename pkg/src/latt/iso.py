"""Lattice isomorphism by colour refinement plus individualisation.

Colours start from (height, depth, number of lower covers, number of upper
covers) and are refined by the multisets of neighbouring colours until
stable.  Canonical forms come from an exhaustive individualisation search;
isomorphism witnesses come from a joint search on the disjoint union, which
stops at the first consistent leaf.
"""

from __future__ import annotations

import numpy as np

from .lattice import FiniteLattice


def _rank(signatures: list) -> list[int]:
    lookup = {s: i for i, s in enumerate(sorted(set(signatures)))}
    return [lookup[s] for s in signatures]


def _refine(colours: list[int], lower: list, upper: list) -> list[int]:
    count = len(set(colours))
    while True:
        sig = [
            (
                colours[v],
                tuple(sorted(colours[w] for w in lower[v])),
                tuple(sorted(colours[w] for w in upper[v])),
            )
            for v in range(len(colours))
        ]
        colours = _rank(sig)
        new_count = len(set(colours))
        if new_count == count:
            return colours
        count = new_count


def _initial(lat: FiniteLattice) -> list:
    return [
        (lat.heights[x], lat.depths[x], len(lat.lower_covers[x]), len(lat.upper_covers[x]))
        for x in range(lat.n)
    ]


def _individualise(colours: list[int], vertices) -> list[int]:
    # vertices jump to a fresh colour just below their old one
    out = [2 * c + 1 for c in colours]
    for v in vertices:
        out[v] -= 1
    return out


def _target_cell(colours: list[int], restrict: int | None = None) -> list[int] | None:
    """Vertices of the smallest-coloured non-singleton cell (first ``restrict`` only)."""
    verts = range(len(colours) if restrict is None else restrict)
    cells: dict[int, list[int]] = {}
    for v in verts:
        cells.setdefault(colours[v], []).append(v)
    multi = [c for c, vs in cells.items() if len(vs) > 1]
    if not multi:
        return None
    return cells[min(multi)]


def canonical_labelling(lat: FiniteLattice) -> tuple[bytes, list[int]]:
    """Return ``(certificate, perm)`` with ``perm[old] = new`` canonical index.

    Two lattices are isomorphic exactly when their certificates agree.
    """
    lower = [list(c) for c in lat.lower_covers]
    upper = [list(c) for c in lat.upper_covers]
    start = _refine(_rank(_initial(lat)), lower, upper)
    best: list = [None, None]

    def leaf(colours):
        perm = colours  # discrete partition: colour ranks are a permutation
        inv = np.argsort(perm)
        cert = np.packbits(lat.leq[np.ix_(inv, inv)]).tobytes()
        if best[0] is None or cert < best[0]:
            best[0], best[1] = cert, list(perm)

    def search(colours):
        cell = _target_cell(colours)
        if cell is None:
            leaf(_rank(colours))
            return
        for v in cell:
            search(_refine(_rank(_individualise(colours, [v])), lower, upper))

    search(start)
    return lat.n.to_bytes(2, "big") + best[0], best[1]


def certificate(lat: FiniteLattice) -> bytes:
    return canonical_labelling(lat)[0]


def canonical_form(lat: FiniteLattice) -> FiniteLattice:
    """The lattice relabelled along its canonical labelling."""
    from .lattice import validate

    _, perm = canonical_labelling(lat)
    inv = np.argsort(perm)
    return validate(lat.leq[np.ix_(inv, inv)])


def are_isomorphic(a: FiniteLattice, b: FiniteLattice) -> list[int] | None:
    """An order isomorphism ``a -> b`` as a list, or ``None``."""
    n = a.n
    if n != b.n:
        return None
    if sorted(_initial(a)) != sorted(_initial(b)):
        return None
    lower = [list(c) for c in a.lower_covers] + [[w + n for w in c] for c in b.lower_covers]
    upper = [list(c) for c in a.upper_covers] + [[w + n for w in c] for c in b.upper_covers]

    def balanced(colours):
        return sorted(colours[:n]) == sorted(colours[n:])

    def search(colours):
        if not balanced(colours):
            return None
        cell = _target_cell(colours, restrict=n)
        if cell is None:
            where = {colours[v]: v - n for v in range(n, 2 * n)}
            f = [where[colours[v]] for v in range(n)]
            return f if _is_order_iso(a, b, f) else None
        v = cell[0]
        for w in range(n, 2 * n):
            if colours[w] == colours[v]:
                found = search(_refine(_rank(_individualise(colours, [v, w])), lower, upper))
                if found is not None:
                    return found
        return None

    start = _refine(_rank(_initial(a) + _initial(b)), lower, upper)
    return search(start)


def _is_order_iso(a: FiniteLattice, b: FiniteLattice, f: list[int]) -> bool:
    if sorted(f) != list(range(b.n)):
        return False
    return bool(np.array_equal(a.leq, b.leq[np.ix_(f, f)]))


def automorphism_orbits(lat: FiniteLattice) -> list[int]:
    """Orbit id (least member) of every element under Aut(lat)."""
    lower = [list(c) for c in lat.lower_covers]
    upper = [list(c) for c in lat.upper_covers]
    start = _refine(_rank(_initial(lat)), lower, upper)
    orbit = list(range(lat.n))
    seen: dict = {}
    for v in range(lat.n):
        cert = _pinned_certificate(lat, start, v, lower, upper)
        orbit[v] = seen.setdefault((start[v], cert), v)
    return orbit


def _pinned_certificate(lat, start, v, lower, upper) -> tuple:
    """Canonical certificate of ``lat`` with ``v`` marked."""
    best: list = [None]

    def search(col):
        cell = _target_cell(col)
        if cell is None:
            perm = _rank(col)
            inv = np.argsort(perm)
            cert = (perm[v], np.packbits(lat.leq[np.ix_(inv, inv)]).tobytes())
            if best[0] is None or cert < best[0]:
                best[0] = cert
            return
        for u in cell:
            search(_refine(_rank(_individualise(col, [u])), lower, upper))

    search(_refine(_rank(_individualise(start, [v])), lower, upper))
    return best[0]


def isomorphisms(a: FiniteLattice, b: FiniteLattice):
    """Yield every order isomorphism ``a -> b`` (as lists)."""
    n = a.n
    if n != b.n or sorted(_initial(a)) != sorted(_initial(b)):
        return
    lower = [list(c) for c in a.lower_covers] + [[w + n for w in c] for c in b.lower_covers]
    upper = [list(c) for c in a.upper_covers] + [[w + n for w in c] for c in b.upper_covers]

    def search(colours):
        if sorted(colours[:n]) != sorted(colours[n:]):
            return
        cell = _target_cell(colours, restrict=n)
        if cell is None:
            where = {colours[v]: v - n for v in range(n, 2 * n)}
            f = [where[colours[v]] for v in range(n)]
            if _is_order_iso(a, b, f):
                yield f
            return
        v = cell[0]
        for w in range(n, 2 * n):
            if colours[w] == colours[v]:
                yield from search(_refine(_rank(_individualise(colours, [v, w])), lower, upper))

    yield from search(_refine(_rank(_initial(a) + _initial(b)), lower, upper))


def algebra_isomorphism(a: FiniteLattice, ops_a, b: FiniteLattice, ops_b) -> list[int] | None:
    """A lattice isomorphism ``f: a -> b`` with ``f(op(x)) = op'(f(x))`` for paired tables."""
    ops_a = [tuple(getattr(t, "table", t)) for t in ops_a]
    ops_b = [tuple(getattr(t, "table", t)) for t in ops_b]
    for f in isomorphisms(a, b):
        if all(f[ta[x]] == tb[f[x]] for ta, tb in zip(ops_a, ops_b) for x in range(a.n)):
            return f
    return None
