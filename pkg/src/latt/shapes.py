"""Naming small lattices by construction expressions.

``name_shape`` splits a lattice at its cut points (elements comparable with
everything) into ordinal-sum components, merges runs of two-element
components into chains and looks each remaining component up in a library of
stock shapes keyed by certificate.
"""

from __future__ import annotations

from functools import lru_cache

from .constructions import Expr, evaluate
from .iso import _initial, are_isomorphic
from .lattice import FiniteLattice, interval

_LIBRARY_CAP = 160


def C(k: int) -> Expr:
    return Expr("chain", (k,))


def B(k: int) -> Expr:
    return Expr("bool", (k,))


def osum(*parts: Expr) -> Expr:
    """Left-nested ordinal sum; one-element chains are dropped."""
    parts = [p for p in parts if not (p.op == "chain" and p.args[0] == 1)]
    if not parts:
        return C(1)
    out = parts[0]
    for p in parts[1:]:
        out = Expr("osum", (out, p))
    return out


def hsum(a: Expr, b: Expr) -> Expr:
    return Expr("hsum", (a, b))


def prod(a: Expr, b: Expr) -> Expr:
    if a.op == "bool" and a.args[0] == 0:
        return b
    if b.op == "bool" and b.args[0] == 0:
        return a
    return Expr("product", (a, b))


N5 = Expr("n5")


def pretty(expr: Expr) -> str:
    """Human form such as ``C2^3 (+) C2``."""

    def go(e: Expr, parent: str | None) -> str:
        if e.op == "chain":
            return f"C{e.args[0]}"
        if e.op == "bool":
            k = e.args[0]
            return "C1" if k == 0 else "C2" if k == 1 else f"C2^{k}"
        if e.op == "mk":
            return f"M{e.args[0]}"
        if e.op == "n5":
            return "N5"
        if e.op == "dual":
            return f"dual({go(e.args[0], None)})"
        if e.op == "interval":
            return f"interval({go(e.args[0], None)}, {e.args[1]}, {e.args[2]})"
        sym = {"osum": " (+) ", "hsum": " [+] ", "product": " x "}[e.op]
        text = go(e.args[0], e.op) + sym + go(e.args[1], e.op)
        # both sums are associative, so only mixed nesting needs brackets
        if parent is None or (parent == e.op and e.op != "product"):
            return text
        return f"({text})"

    return go(expr, None)


def _library_exprs():
    out = [N5]
    for k in range(2, 8):
        out.append(B(k))
    for k in range(3, 8):
        out.append(Expr("mk", (k,)))
    for p in range(2, 9):
        for q in range(p, 9):
            if (p, q) != (2, 2):
                out.append(prod(C(p), C(q)))
    for r in range(3, 9):
        for s in range(r, 9):
            if (r, s) not in ((3, 3), (3, 4)):
                out.append(hsum(C(r), C(s)))
    small = [osum(C(2), B(2)), osum(B(2), C(2)), osum(B(2), B(2)), osum(C(3), B(2)), N5]
    for k in range(1, 6):
        for z in small:
            out.append(prod(B(k), z))
        out.append(prod(B(k), C(3)))
    return out


def _invariant(lat: FiniteLattice) -> tuple:
    return lat.n, tuple(sorted(_initial(lat)))


@lru_cache(maxsize=1)
def _library() -> dict[tuple, list[tuple[Expr, FiniteLattice]]]:
    # keyed by a cheap invariant; symmetric lattices make certificates slow
    lib: dict[tuple, list] = {}
    for e in _library_exprs():
        lat = evaluate(e)
        if lat.n <= _LIBRARY_CAP:
            lib.setdefault(_invariant(lat), []).append((e, lat))
    return lib


def lookup(lat: FiniteLattice) -> Expr | None:
    """The stock expression isomorphic to ``lat``, if any."""
    for e, ref in _library().get(_invariant(lat), ()):
        if are_isomorphic(lat, ref) is not None:
            return e
    return None


def cut_points(lat: FiniteLattice) -> list[int]:
    """Elements comparable with every element, in increasing order."""
    comp = lat.leq | lat.leq.T
    cuts = [x for x in range(lat.n) if comp[x].all()]
    return sorted(cuts, key=lambda x: lat.heights[x])


def name_shape(lat: FiniteLattice) -> Expr | None:
    """A construction expression for ``lat`` or ``None`` if no stock name fits."""
    if lat.n == 1:
        return C(1)
    cuts = cut_points(lat)
    parts: list[Expr] = []
    run = 1  # length of the current chain run, counted in elements
    for lo, hi in zip(cuts, cuts[1:]):
        comp = interval(lat, lo, hi)
        if comp.n == 2:
            run += 1
            continue
        if run > 1:
            parts.append(C(run))
        run = 1
        e = lookup(comp)
        if e is None:
            return None
        parts.append(e)
    if run > 1:
        parts.append(C(run))
    return osum(*parts)
