"""Quotient sizes of principal congruences generated by a covering pair.

For a cover ``a < b`` the lattice congruence ``Cg(a, b)`` and its closure
under the operation, ``CgW(a, b)``, are computed directly.  How many elements
the quotient loses is then compared with the case analyses: configurations
of the interval above ``a`` (or, dually, below ``b``) together with conditions
on the operation table.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from ..congruence import Congruence, eq, full, principal_congruence
from ..constructions import chain, horizontal_sum, product
from ..iso import are_isomorphic
from ..lattice import FiniteLattice, dual, is_sublattice, sublattice
from ..wdl import delta_ab, delta_tables, principal_wcl_congruence, trivial_delta_table
from .maxima import catalog
from .report import TheoremReport, Timer


def _eps(lat: FiniteLattice, *classes: Sequence[int]) -> tuple[int, ...]:
    return eq(lat, classes).block_of


def drop(theta: Congruence) -> int:
    return theta.host.n - theta.n_blocks


def _mi(lat, x) -> bool:
    return len(lat.upper_covers[x]) == 1


def _ji(lat, x) -> bool:
    return len(lat.lower_covers[x]) == 1


# --- configurations of the lattice alone --------------------------------------------


@dataclass(frozen=True)
class Config:
    """A witness configuration above ``a``; ``kind`` is '2' or one of '3.1'..'3.4'."""

    kind: str
    a: int
    b: int
    c: int
    top: int  # b v c
    d: int = -1
    e: int = -1


def _square_above(lat, a, b, c) -> bool:
    t = lat.join_rows[b][c]
    return lat.is_cover(b, t) and lat.is_cover(c, t) and set(lat.interval_elements(a, t)) == {a, b, c, t}


def configs(lat: FiniteLattice, a: int, b: int, cg: Congruence) -> Iterator[Config]:
    """Configurations of the two- and three-element drops with ``a`` not meet irreducible."""
    if _mi(lat, a):
        return
    for c in lat.upper_covers[a]:
        if c == b:
            continue
        t = lat.join_rows[b][c]
        interval = set(lat.interval_elements(a, t))
        if _square_above(lat, a, b, c):
            if cg.block_of == _eps(lat, [a, b], [c, t]):
                yield Config("2", a, b, c, t)
            if cg.block_of == _eps(lat, [a, b, c, t]):
                yield Config("3.1", a, b, c, t)
            rest = [x for x in range(lat.n) if x not in interval]
            for d in rest:
                for e in lat.upper_covers[d]:
                    if e in interval:
                        continue
                    if cg.block_of == _eps(lat, [a, b], [c, t], [d, e]):
                        yield Config("3.4", a, b, c, t, d, e)
        if len(interval) == 5:
            if lat.is_cover(c, t):
                for d in lat.upper_covers[b]:
                    if lat.is_cover(d, t) and interval == {a, b, c, d, t}:
                        if cg.block_of == _eps(lat, [a, b, d], [c, t]):
                            yield Config("3.2", a, b, c, t, d)
            if lat.is_cover(b, t):
                for d in lat.upper_covers[c]:
                    if lat.is_cover(d, t) and interval == {a, b, c, d, t}:
                        if cg.block_of == _eps(lat, [a, b], [c, d, t]):
                            yield Config("3.3", a, b, c, t, d)


def oriented_configs(lat: FiniteLattice, dl: FiniteLattice, a: int, b: int, cg: Congruence):
    """Primal configurations, then those of the dual lattice for the reversed cover."""
    primal = list(configs(lat, a, b, cg))
    dual_ = list(configs(dl, b, a, cg))
    return primal, dual_


# --- operation conditions --------------------------------------------------------


def _is_sub_iso(lat, elems, ref, bounded=False) -> bool:
    elems = set(elems)
    if len(elems) != ref.n or not is_sublattice(lat, elems):
        return False
    if bounded and not {lat.bottom, lat.top} <= elems:
        return False
    return are_isomorphic(sublattice(lat, elems)[0], ref) is not None


_HEX = None
_C2C3 = None


def _refs():
    global _HEX, _C2C3
    if _HEX is None:
        _HEX = horizontal_sum(chain(4), chain(4))
        _C2C3 = product(chain(2), chain(3))
    return _HEX, _C2C3


def _delta_is(lat, t, x, y) -> bool:
    found = delta_ab(lat, x, y) if x != y and not {x, y} & {lat.bottom, lat.top} else None
    return found is not None and found.table == tuple(t)


def _subcases(lat: FiniteLattice, t, cfg: Config, cgw: Congruence) -> dict[str, bool]:
    a, b, c, j, d, e = cfg.a, cfg.b, cfg.c, cfg.top, cfg.d, cfg.e
    n, z, one = lat.n, lat.bottom, lat.top
    tt = [t[t[x]] for x in range(n)]
    w = cgw.block_of
    if cfg.kind == "2":  # the delta subcases
        return {
            "delta1": a == z and j == one and n == 4 and tuple(t) == trivial_delta_table(lat) and cgw.is_full(),
            "delta2": lat.is_cover(z, a) and j == one and n == 5 and _delta_is(lat, t, b, c)
            and w == _eps(lat, [z, a, b], [c, one]),
            "delta3": lat.is_cover(t[j], t[c]) and lat.lt(t[c], t[b]) and t[b] == t[a]
            and w == _eps(lat, [a, b], [c, j], [t[c], t[j]])
            and tt[a] == tt[b] == a and tt[c] == c and tt[j] == j,
            "delta4": t[j] == t[b] and lat.is_cover(t[b], t[a]) and t[a] == t[c]
            and w == _eps(lat, [a, b], [c, j], [t[a], t[b]])
            and tt[a] == tt[c] == a and tt[b] == tt[j] == b,
        }
    if cfg.kind == "3.1":
        return {
            "epsilon1": t[a] == t[b] == t[c] == t[j],
            "epsilon2": n == 4 and _delta_is(lat, t, b, c),
        }
    if cfg.kind == "3.2":
        return {
            "phi1": t[a] == t[b] == t[d] and t[c] == t[j] and j != one,
            "phi2": n == 5 and _delta_is(lat, t, c, d),
        }
    if cfg.kind == "3.3":
        return {
            "psi1": t[a] == t[b] and t[c] == t[d] == t[j] and j != one,
            "psi2": n == 5 and _delta_is(lat, t, b, d),
        }
    hexagon, c2c3 = _refs()
    mr = lat.meet_rows
    return {
        "chi1": t[a] == t[b] and t[c] == t[j] and t[d] == t[e] and j != one and e != one,
        "chi2": tuple(t) != trivial_delta_table(lat) and _is_sub_iso(lat, {mr[c][d], c, d, e, j, one}, hexagon),
        "chi3": a == z and e == one and _is_sub_iso(lat, {a, b, c, j, d, e}, c2c3, bounded=True)
        and t[b] == d and t[d] == b,
        "chi4": d == z and j == one and _is_sub_iso(lat, {d, e, a, b, c, j}, c2c3, bounded=True)
        and t[e] == c and t[c] == e,
    }


# --- the checks ------------------------------------------------------------------


def check_lattice_cover(report: TheoremReport, lat, dl, a, b) -> tuple[Congruence, list, list]:
    cg = principal_congruence(lat, a, b)
    k = drop(cg)
    primal, dual_ = oriented_configs(lat, dl, a, b, cg)
    kinds = {x.kind for x in primal} | {x.kind for x in dual_}
    wit = {"lattice": lat, "cover": [a, b], "drop": k}
    one_a = _mi(lat, a) and _ji(lat, b)
    one_c = cg.block_of == _eps(lat, [a, b])
    report.check((k == 1) == one_a == one_c, "Cg drop (1)", f"drop {k}, irreducibility {one_a}, shape {one_c}", **wit)
    report.check((k == 2) == ("2" in kinds), "Cg drop (2)", f"drop {k}, configurations {sorted(kinds)}", **wit)
    three = bool(kinds & {"3.1", "3.2", "3.3", "3.4"})
    report.check((k == 3) == three, "Cg drop (3)", f"drop {k}, configurations {sorted(kinds)}", **wit)
    return cg, primal, dual_


def check_wcl_cover(report: TheoremReport, lat, dl, a, b, t, cg, primal, dual_) -> None:
    cgw = principal_wcl_congruence(lat, t, a, b)
    k, kw = drop(cg), drop(cgw)
    n, one = lat.n, lat.top
    same = cgw.block_of == cg.block_of
    wit = {"lattice": lat, "cover": [a, b], "delta": list(t), "drop": kw}

    # (1)
    lhs = kw == 1
    mid = same and cg.block_of == _eps(lat, [a, b])
    rhs = _mi(lat, a) and _ji(lat, b) and (n == 2 or t[a] == t[b] == one)
    report.check(lhs == mid == rhs, "CgW drop (1)", f"drop {kw}: {lhs}/{mid}/{rhs}", **wit)

    # (2)
    alpha = b == one and n == 3
    beta = False
    if same:
        for cfg in primal:
            if cfg.kind == "2":
                c, j = cfg.c, cfg.top
                beta |= (t[a] == t[b] and t[c] == t[j]) or (n == 4 and _delta_is(lat, t, b, c))
        for cfg in dual_:
            if cfg.kind == "2":
                c, m = cfg.c, cfg.top  # c < b in the lattice, m = a meet c
                beta |= (t[a] == t[b] and t[c] == t[m]) or (n == 4 and _delta_is(lat, t, a, c))
    report.check((kw == 2) == (alpha or beta), "CgW drop (2)", f"drop {kw}, alpha {alpha}, beta {beta}", **wit)

    # (3), top-level cases in either orientation
    gamma = k == 1 and kw == 3
    delta = k == 2 and kw == 3
    kinds = {x.kind for x in primal} | {x.kind for x in dual_}
    zeta = same and bool(kinds & {"3.1", "3.2", "3.3", "3.4"})
    report.check((kw == 3) == (gamma or delta or zeta), "CgW drop (3)", f"drop {kw}", **wit)

    # subcases, primal orientation
    if gamma:
        ok = n == 4 and lat.is_chain() and b == one and lat.is_cover(a, one)
        report.check(ok, "CgW drop (3) gamma", "not the coatom of C4 collapsed with 1", **wit)
    for cfg in primal:
        if cfg.kind == "2" and not delta:
            continue
        if cfg.kind != "2" and not same:
            continue
        subs = _subcases(lat, t, cfg, cgw)
        name = {"2": "delta", "3.1": "epsilon", "3.2": "phi", "3.3": "psi", "3.4": "chi"}[cfg.kind]
        report.check(any(subs.values()), f"CgW drop (3) {name}", f"no listed subcase holds for {cfg}", **wit)


def verify_quotient_size_lemmas(n_max: int = 7, n_min: int = 2) -> TheoremReport:
    report = TheoremReport("quotients", {"n_min": n_min, "n_max": n_max})
    with Timer(report):
        tally: dict[str, int] = {}
        for n in range(n_min, n_max + 1):
            for lat in catalog(n):
                dl = dual(lat)
                tables = delta_tables(lat)
                for a, b in lat.covers():
                    cg, primal, dual_ = check_lattice_cover(report, lat, dl, a, b)
                    for t in tables:
                        check_wcl_cover(report, lat, dl, a, b, t, cg, primal, dual_)
                        key = f"drop {drop(principal_wcl_congruence(lat, t, a, b))}"
                        tally[key] = tally.get(key, 0) + 1
        report.summary["WCL quotient drops"] = dict(sorted(tally.items()))
    return report
