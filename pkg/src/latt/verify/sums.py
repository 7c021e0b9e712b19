"""Congruences of ordinal and horizontal sums against their explicit descriptions."""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from ..congruence import (
    ConLattice,
    Congruence,
    all_congruences,
    con_filtered,
    eq,
    full,
    identity,
    hsum_congruence,
    osum_congruence,
)
from ..constructions import (
    chain,
    horizontal_sum,
    horizontal_sum_maps,
    n5,
    ordinal_sum,
    ordinal_sum_maps,
    product,
)
from ..iso import are_isomorphic
from ..lattice import FiniteLattice, dual, sublattice
from ..wdl import (
    con_preserving,
    delta_ab,
    delta_tables,
    is_representable,
    nabla_ab,
    trivial_delta_table,
    WeakComplementation,
    DualWeakComplementation,
)
from .maxima import catalog
from .report import TheoremReport, Timer


def _blocks(cons: Iterable[Congruence]) -> set[tuple[int, ...]]:
    return {c.block_of for c in cons}


def _stack(lat: FiniteLattice) -> FiniteLattice:
    """``lat (+) C2``."""
    return ordinal_sum(lat, chain(2))


def _same_shape(con: ConLattice, ref: FiniteLattice) -> bool:
    return len(con) == ref.n and are_isomorphic(con.order, ref) is not None


def _with_singleton(con: ConLattice, element: int) -> ConLattice:
    return con.filtered(lambda t: len(t.block(element)) == 1)


def _nabla_tables(lat: FiniteLattice) -> list[tuple[int, ...]]:
    return delta_tables(dual(lat))


# --- ordinal sums ------------------------------------------------------------------


def _extend_delta(lat, top, table_m, host):
    """Delta on ``lat (+) top``: 1 below the glue point, the M-operation above it."""
    _, right = ordinal_sum_maps(lat, top)
    out = [host.top] * host.n
    for y in range(top.n):
        if y != top.top:
            out[right[y]] = right[table_m[y]]
    out[host.top] = host.bottom
    return tuple(out)


def _extend_nabla(lat, top, table_l, host):
    left, _ = ordinal_sum_maps(lat, top)
    out = [host.bottom] * host.n
    for x in range(lat.n):
        if x != lat.bottom:
            out[left[x]] = left[table_l[x]]
    out[host.bottom] = host.top
    return tuple(out)


def _osum_set(host, alphas, betas) -> set[tuple[int, ...]]:
    out = {osum_congruence(a, b, host=host).block_of for a in alphas for b in betas}
    out.add(full(host).block_of)
    return out


def _osum_shape(alphas: ConLattice, betas: ConLattice) -> FiniteLattice:
    return _stack(product(alphas.order, betas.order))


def check_ordinal_pair(report: TheoremReport, lat: FiniteLattice, top: FiniteLattice) -> None:
    host = ordinal_sum(lat, top)
    con_a, con_l, con_m = all_congruences(host), all_congruences(lat), all_congruences(top)
    deltas_m, nablas_l = delta_tables(top), _nabla_tables(lat)
    wit = {"lower": lat, "upper": top}

    ext_d = sorted(_extend_delta(lat, top, t, host) for t in deltas_m)
    report.check(sorted(delta_tables(host)) == ext_d, "osum deltas", "weak complementations are not the extensions", **wit)
    ext_n = sorted(_extend_nabla(lat, top, t, host) for t in nablas_l)
    report.check(sorted(_nabla_tables(host)) == ext_n, "osum nablas", "dual weak complementations are not the extensions", **wit)

    wcl1 = {t: _with_singleton(con_preserving(top, t, con=con_m), top.top) for t in deltas_m}
    wdcl0 = {t: _with_singleton(con_preserving(lat, t, con=con_l), lat.bottom) for t in nablas_l}

    for t in deltas_m:
        d = _extend_delta(lat, top, t, host)
        got = con_preserving(host, d, con=con_a)
        want = _osum_set(host, con_l, wcl1[t])
        w = dict(wit, delta_upper=list(t))
        report.check(_blocks(got) == want, "osum Con_WCL", f"{len(got)} congruences, description gives {len(want)}", **w)
        report.check(_same_shape(got, _osum_shape(con_l, wcl1[t])), "osum Con_WCL shape", "not (Con(L) x Con_WCL1(M)) (+) C2", **w)

    for s in nablas_l:
        nb = _extend_nabla(lat, top, s, host)
        got = con_preserving(host, nb, con=con_a)
        want = _osum_set(host, wdcl0[s], con_m)
        w = dict(wit, nabla_lower=list(s))
        report.check(_blocks(got) == want, "osum Con_WDCL", f"{len(got)} congruences, description gives {len(want)}", **w)
        report.check(_same_shape(got, _osum_shape(wdcl0[s], con_m)), "osum Con_WDCL shape", "not (Con_WDCL0(L) x Con(M)) (+) C2", **w)

    for t, s in itertools.product(deltas_m, nablas_l):
        d, nb = _extend_delta(lat, top, t, host), _extend_nabla(lat, top, s, host)
        got = con_preserving(host, d, nb, con=con_a)
        # the lower summand carries the dual operation, the upper one the operation
        want = _osum_set(host, wdcl0[s], wcl1[t])
        w = dict(wit, delta_upper=list(t), nabla_lower=list(s))
        report.check(_blocks(got) == want, "osum Con_WDL", f"{len(got)} congruences, description gives {len(want)}", **w)
        report.check(_same_shape(got, _osum_shape(wdcl0[s], wcl1[t])), "osum Con_WDL shape", "not (Con_WDCL0(L) x Con_WCL1(M)) (+) C2", **w)


# --- horizontal sums ---------------------------------------------------------------


def _strictly_ji_top(lat: FiniteLattice) -> bool:
    return len(lat.lower_covers[lat.top]) == 1


def _lift(lat: FiniteLattice, elems: Sequence[int], theta: Congruence) -> Congruence:
    """A congruence of a sublattice on ``elems``, other elements as singletons."""
    classes: dict[int, list[int]] = {}
    for i, b in enumerate(theta.block_of):
        classes.setdefault(b, []).append(elems[i])
    return eq(lat, classes.values())


def _con01_below_coatom(lat: FiniteLattice) -> tuple[list[Congruence], ConLattice]:
    """``gamma (+) =C2`` on ``lat`` for gamma in Con01((1^-]), and Con01((1^-]) itself."""
    (coatom,) = lat.lower_covers[lat.top]
    ideal, elems = sublattice(lat, lat.interval_elements(lat.bottom, coatom))
    con01 = con_filtered(ideal, True, True)
    return [_lift(lat, elems, g) for g in con01], con01


def _con01_middle(lat: FiniteLattice) -> tuple[list[Congruence], ConLattice]:
    """``=C2 (+) eps (+) =C2`` for eps in Con01([0^+, 1^-])."""
    (atom,) = lat.upper_covers[lat.bottom]
    (coatom,) = lat.lower_covers[lat.top]
    mid, elems = sublattice(lat, lat.interval_elements(atom, coatom))
    con01 = con_filtered(mid, True, True)
    return [_lift(lat, elems, g) for g in con01], con01


def _hsum_set(host, lefts, rights) -> set[tuple[int, ...]]:
    out = {hsum_congruence(a, b, host=host).block_of for a in lefts for b in rights}
    out.add(full(host).block_of)
    return out


def _phi_psi(lat, other, host) -> tuple[Congruence, Congruence]:
    left, right = horizontal_sum_maps(lat, other)
    ls = {left[x] for x in range(lat.n)}
    ms = {right[y] for y in range(other.n)}
    phi = eq(host, [ls - {host.bottom}, ms - {host.top}])
    psi = eq(host, [ls - {host.top}, ms - {host.bottom}])
    return phi, psi


def check_hsum_wcl(report: TheoremReport, lat: FiniteLattice, other: FiniteLattice, label: str) -> None:
    """The operation count and the three cases for Con_WCL of the nontrivial operation."""
    host = horizontal_sum(lat, other)
    left, right = horizontal_sum_maps(lat, other)
    wit = {"left": lat, "right": other}
    tables = delta_tables(host)
    both = _strictly_ji_top(lat) and _strictly_ji_top(other)
    report.check(len(tables) == (2 if both else 1), f"{label} count", f"{len(tables)} operations", **wit)
    for t in tables:
        report.check(
            is_representable(WeakComplementation(host, t)) is not None,
            f"{label} representable",
            "operation is not representable",
            op=list(t),
            **wit,
        )
    con_a = all_congruences(host)
    triv = con_preserving(host, trivial_delta_table(host), con=con_a)
    want = _blocks(con_filtered(host, True, True, con=con_a)) | {full(host).block_of}
    report.check(_blocks(triv) == want, f"{label} trivial", "Con of the trivial operation is not Con01 + top", **wit)
    if not both:
        return
    (cl,), (cm,) = lat.lower_covers[lat.top], other.lower_covers[other.top]
    nontriv = delta_ab(host, left[cl], right[cm])
    report.check(
        nontriv is not None and nontriv.table in tables and nontriv.table != trivial_delta_table(host),
        f"{label} nontrivial",
        "the nontrivial operation does not swap the two coatoms",
        **wit,
    )
    if nontriv is None:
        return
    got = con_preserving(host, nontriv.table, con=con_a)
    phi, psi = _phi_psi(lat, other, host)
    if lat.n == 3 and other.n == 3:
        want, shape = {identity(host).block_of, phi.block_of, psi.block_of, full(host).block_of}, product(chain(2), chain(2))
        case = "(1)"
    elif lat.n == 3:
        lifted, con01 = _con01_below_coatom(other)
        want = _hsum_set(host, [identity(lat)], lifted) | {phi.block_of}
        shape = ordinal_sum(con01.order, chain(3))
        case = "(2)"
    elif other.n == 3:
        return  # the mirror image of case (2), covered by the swapped pair
    else:
        lg, cg = _con01_below_coatom(lat)
        ld, cd = _con01_below_coatom(other)
        want = _hsum_set(host, lg, ld)
        shape = _stack(product(cg.order, cd.order))
        case = "(3)"
    report.check(_blocks(got) == want, f"{label} case {case}", f"{len(got)} congruences, description gives {len(want)}", **wit)
    report.check(_same_shape(got, shape), f"{label} case {case} shape", "shape differs", **wit)


def check_hsum_wdl(report: TheoremReport, lat: FiniteLattice, other: FiniteLattice) -> None:
    host = horizontal_sum(lat, other)
    left, right = horizontal_sum_maps(lat, other)
    wit = {"left": lat, "right": other}
    c1 = _strictly_ji_top(lat) and _strictly_ji_top(other)
    c2 = _strictly_ji_top(dual(lat)) and _strictly_ji_top(dual(other))
    td, tn = trivial_delta_table(host), trivial_delta_table(dual(host))
    deltas, nablas = [td], [tn]
    if c1:
        (a,), (b,) = lat.lower_covers[lat.top], other.lower_covers[other.top]
        deltas.append(delta_ab(host, left[a], right[b]).table)
    if c2:
        (a,), (b,) = lat.upper_covers[lat.bottom], other.upper_covers[other.bottom]
        nablas.append(nabla_ab(host, left[a], right[b]).table)
    pairs = {(d, nb) for d in deltas for nb in nablas}
    found = {(d, nb) for d in delta_tables(host) for nb in _nabla_tables(host) if all(
        host.le(nb[x], d[x]) for x in range(host.n))}
    report.check(found == pairs, "hsum WDL pairs", f"{len(found)} pairs, expected {len(pairs)}", **wit)
    for nb in nablas:
        report.check(
            is_representable(DualWeakComplementation(host, nb)) is not None,
            "hsum WDL representable", "dual operation is not representable", **wit,
        )
    con_a = all_congruences(host)
    square = lat.n == 3 and other.n == 3
    for d, nb in pairs:
        got = con_preserving(host, d, nb, con=con_a)
        w = dict(wit, delta=list(d), nabla=list(nb))
        nd, nn = d != td, nb != tn
        if square:
            if nd and nn:
                phi, psi = _phi_psi(lat, other, host)
                want = {identity(host).block_of, phi.block_of, psi.block_of, full(host).block_of}
            else:
                want = {identity(host).block_of, full(host).block_of}
        elif nd and nn:
            want = _hsum_set(host, _con01_middle(lat)[0], _con01_middle(other)[0])
        elif nd:
            want = _hsum_set(host, _con01_below_coatom(lat)[0], _con01_below_coatom(other)[0])
        elif nn:
            dl, dm = dual(lat), dual(other)
            want = _hsum_set(host, _con01_below_coatom(dl)[0], _con01_below_coatom(dm)[0])
        else:
            want = _blocks(con_filtered(host, True, True, con=con_a)) | {full(host).block_of}
        report.check(_blocks(got) == want, "hsum Con_WDL", f"{len(got)} congruences, description gives {len(want)}", **w)


def check_triple(report: TheoremReport, k, lat, m) -> None:
    host = horizontal_sum(horizontal_sum(k, lat), m)
    nd, nn = len(delta_tables(host)), len(_nabla_tables(host))
    report.check(nd == 1 and nn == 1, "triple hsum", f"{nd} operations and {nn} dual operations", parts=[k, lat, m])


# --- N5 worked tables ------------------------------------------------------------


def check_n5_tables(report: TheoremReport) -> None:
    lat = n5()
    a, b, c = 1, 2, 3  # 0 < a < 1 and 0 < b < c < 1
    td, tn = trivial_delta_table(lat), trivial_delta_table(dual(lat))
    dac, nab = delta_ab(lat, a, c).table, nabla_ab(lat, a, b).table

    def parts(*classes):
        return eq(lat, classes).block_of

    ident, top = identity(lat).block_of, full(lat).block_of
    mid = parts([0], [a], [b, c], [4])
    expected = {
        ("wcl", td): {ident, mid, top},
        ("wcl", dac): {ident, parts([0, b, c], [a, 4]), top},
        ("wdcl", tn): {ident, mid, top},
        ("wdcl", nab): {ident, parts([0, a], [b, c, 4]), top},
        ("wdl", (td, tn)): {ident, mid, top},
        ("wdl", (td, nab)): {ident, top},
        ("wdl", (dac, tn)): {ident, top},
        ("wdl", (dac, nab)): {ident, top},
    }
    report.check(sorted(delta_tables(lat)) == sorted([td, dac]), "N5 tables", "weak complementations differ")
    report.check(sorted(_nabla_tables(lat)) == sorted([tn, nab]), "N5 tables", "dual weak complementations differ")
    for (kind, ops), want in expected.items():
        tables = ops if kind == "wdl" else (ops,)
        got = _blocks(con_preserving(lat, *tables))
        report.check(got == want, "N5 tables", f"{kind} {[list(t) for t in tables]}: {sorted(got)}")


def verify_sum_structures(size_cap: int = 5, hsum_cap: int = 6, triples: bool = True) -> TheoremReport:
    report = TheoremReport("sums", {"size_cap": size_cap, "hsum_cap": hsum_cap})
    with Timer(report):
        small = [lat for n in range(2, size_cap + 1) for lat in catalog(n)]
        for lat, top in itertools.product(small, small):
            check_ordinal_pair(report, lat, top)
        report.summary["ordinal pairs"] = len(small) ** 2

        mids = [lat for n in range(3, hsum_cap + 1) for lat in catalog(n)]
        for lat, other in itertools.product(mids, mids):
            check_hsum_wcl(report, lat, other, "hsum")
            check_hsum_wcl(report, dual(lat), dual(other), "dual hsum")
            check_hsum_wdl(report, lat, other)
        report.summary["horizontal pairs"] = len(mids) ** 2

        if triples:
            count = 0
            for k, lat, m in itertools.combinations_with_replacement(mids, 3):
                check_triple(report, k, lat, m)
                count += 1
            report.summary["horizontal triples"] = count
        check_n5_tables(report)
    return report
