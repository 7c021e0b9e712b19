"""Weak complementations, dual weak complementations and their pairs.

A weak complementation on a bounded lattice is an antitone map ``D`` with
``D(D(x)) <= x`` and ``(x ^ y) v (x ^ D(y)) = x``.  A dual weak
complementation ``N`` satisfies the order dual axioms, and a pair ``(D, N)``
with ``N(x) <= D(x)`` everywhere is a weak dicomplementation.

Everything on the dual side is obtained by running the primal code on
``dual(L)``: the tables carry over unchanged because the dual lattice keeps
the element indices.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .congruence import ConLattice, Congruence, all_congruences, generate, quotient
from .errors import BadElements, InvalidOperation, NotASublattice, NotDeltaPreserving
from .lattice import FiniteLattice, dual, is_sublattice


@dataclass(frozen=True, eq=False)
class UnaryOp:
    host: FiniteLattice
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != self.host.n or not all(0 <= v < self.host.n for v in self.table):
            raise InvalidOperation("table must map every element to an element")

    def __call__(self, x: int) -> int:
        return self.table[x]

    def __eq__(self, other):
        if not isinstance(other, UnaryOp):
            return NotImplemented
        return type(self) is type(other) and self.table == other.table and (
            self.host is other.host or self.host == other.host
        )

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"{type(self).__name__}({list(self.table)})"


class WeakComplementation(UnaryOp):
    def __post_init__(self):
        super().__post_init__()
        problem = delta_violation(self.host, self.table)
        if problem:
            raise InvalidOperation(problem)

    def is_trivial(self) -> bool:
        return self.table == trivial_delta_table(self.host)


class DualWeakComplementation(UnaryOp):
    def __post_init__(self):
        super().__post_init__()
        problem = delta_violation(dual(self.host), self.table)
        if problem:
            raise InvalidOperation("dual axioms: " + problem)

    def is_trivial(self) -> bool:
        return self.table == trivial_delta_table(dual(self.host))


@dataclass(frozen=True)
class DicompLattice:
    lattice: FiniteLattice
    delta: WeakComplementation
    nabla: DualWeakComplementation

    def __post_init__(self):
        lat = self.lattice
        for x in range(lat.n):
            if not lat.le(self.nabla(x), self.delta(x)):
                raise InvalidOperation(f"nabla({x}) is not below delta({x})")

    def to_json(self) -> str:
        return algebra_json(self.lattice, self.delta, self.nabla)


def delta_violation(lat: FiniteLattice, table: Sequence[int]) -> str | None:
    """First weak complementation axiom that fails, or ``None``."""
    n, le = lat.n, lat.le
    mr, jr = lat.meet_rows, lat.join_rows
    for x in range(n):
        if not le(table[table[x]], x):
            return f"D(D({x})) is not below {x}"
        for y in range(n):
            if le(x, y) and not le(table[y], table[x]):
                return f"not antitone at {x} <= {y}"
            if jr[mr[x][y]][mr[x][table[y]]] != x:
                return f"(x^y) v (x^D(y)) != x at x={x}, y={y}"
    return None


def is_weak_complementation(lat: FiniteLattice, table: Sequence[int]) -> bool:
    return delta_violation(lat, table) is None


def is_dual_weak_complementation(lat: FiniteLattice, table: Sequence[int]) -> bool:
    return delta_violation(dual(lat), table) is None


def trivial_delta_table(lat: FiniteLattice) -> tuple[int, ...]:
    if lat.n == 1:
        return (lat.bottom,)
    return tuple(lat.bottom if x == lat.top else lat.top for x in range(lat.n))


def trivial_delta(lat: FiniteLattice) -> WeakComplementation:
    return WeakComplementation(lat, trivial_delta_table(lat))


def trivial_nabla(lat: FiniteLattice) -> DualWeakComplementation:
    return DualWeakComplementation(lat, trivial_delta_table(dual(lat)))


def delta_ab(lat: FiniteLattice, a: int, b: int) -> WeakComplementation | None:
    """The map 1 -> 0, a -> b, b -> a, everything else -> 1, if it is valid."""
    if a == b or {a, b} & {lat.bottom, lat.top}:
        raise BadElements("a and b must be distinct elements other than 0 and 1")
    table = [lat.top] * lat.n
    table[lat.top], table[a], table[b] = lat.bottom, b, a
    if not is_weak_complementation(lat, table):
        return None
    return WeakComplementation(lat, tuple(table))


def nabla_ab(lat: FiniteLattice, a: int, b: int) -> DualWeakComplementation | None:
    found = delta_ab(dual(lat), a, b)
    return None if found is None else DualWeakComplementation(lat, found.table)


# --- enumeration -------------------------------------------------------------


def delta_tables(lat: FiniteLattice) -> list[tuple[int, ...]]:
    """All weak complementation tables in the deterministic search order.

    Elements are assigned from the top down.  For ``x`` the candidates are
    the ``z`` with ``x v z = 1`` lying above every value already forced:
    ``D(y)`` for assigned ``y > x`` (antitone) and every ``y`` with
    ``x ^ y = 0``.  Candidates are tried from the top of the lattice down,
    so the trivial operation comes first.  Each complete table is
    re-checked against the full axioms.
    """
    n = lat.n
    if n == 1:
        return [(lat.bottom,)]
    le, mr, jr = lat.le, lat.meet_rows, lat.join_rows
    bottom, top = lat.bottom, lat.top
    order = list(reversed(lat.linear_extension))
    preference = sorted(range(n), key=lambda z: (-lat.heights[z], z))
    # everything disjoint from x must lie below D(x)
    disjoint = [lat.join_all(y for y in range(n) if mr[x][y] == bottom) for x in range(n)]
    table = [-1] * n
    table[top], table[bottom] = bottom, top
    found = []

    def consistent(x: int, z: int) -> bool:
        for y in range(n):
            d = table[y]
            if d < 0:
                continue
            # D(D(x)) <= x and the quasi-equation D(x) <= y => D(y) <= x
            if y == z and not le(d, x):
                return False
            if d == x and not le(z, y):
                return False
            if le(z, y) and not le(d, x):
                return False
            if le(d, x) and not le(z, y):
                return False
        return True

    def assign(i: int):
        if i == len(order):
            if is_weak_complementation(lat, table):
                found.append(tuple(table))
            return
        x = order[i]
        if table[x] >= 0:
            assign(i + 1)
            return
        lb = disjoint[x]
        for y in range(n):
            if table[y] >= 0 and y != x and le(x, y):
                lb = jr[lb][table[y]]
        for z in preference:
            if jr[x][z] == top and le(lb, z) and consistent(x, z):
                table[x] = z
                assign(i + 1)
                table[x] = -1

    assign(0)
    return found


def enumerate_weak_complementations(lat: FiniteLattice) -> list[WeakComplementation]:
    return [WeakComplementation(lat, t) for t in delta_tables(lat)]


def enumerate_dual_weak_complementations(lat: FiniteLattice) -> list[DualWeakComplementation]:
    return [DualWeakComplementation(lat, t) for t in delta_tables(dual(lat))]


def enumerate_dicomplementations(lat: FiniteLattice) -> list[DicompLattice]:
    deltas = enumerate_weak_complementations(lat)
    nablas = enumerate_dual_weak_complementations(lat)
    out = []
    for d in deltas:
        for m in nablas:
            if all(lat.le(m(x), d(x)) for x in range(lat.n)):
                out.append(DicompLattice(lat, d, m))
    return out


def brute_force_delta_tables(lat: FiniteLattice) -> list[tuple[int, ...]]:
    """Every map checked against the axioms; only for tiny lattices."""
    return [
        t for t in itertools.product(range(lat.n), repeat=lat.n) if is_weak_complementation(lat, t)
    ]


def product_op(first: FiniteLattice, op1, second: FiniteLattice, op2) -> tuple[int, ...]:
    """Componentwise table on ``product(first, second)`` (index ``i * |second| + j``)."""
    t1, t2 = _ops(op1)[0], _ops(op2)[0]
    m = second.n
    return tuple(t1[i] * m + t2[j] for i in range(first.n) for j in range(m))


# --- representability ------------------------------------------------------


def is_join_dense(lat: FiniteLattice, subset: Iterable[int]) -> bool:
    s = set(subset)
    return all(lat.join_all(j for j in s if lat.le(j, x)) == x for x in range(lat.n))


def delta_from_join_dense(lat: FiniteLattice, subset: Iterable[int]) -> WeakComplementation | None:
    """x -> join of the members of ``subset`` not below x; None unless join-dense."""
    s = sorted(set(subset))
    if not is_join_dense(lat, s):
        return None
    table = tuple(lat.join_all(j for j in s if not lat.le(j, x)) for x in range(lat.n))
    return WeakComplementation(lat, table)


def nabla_from_meet_dense(lat: FiniteLattice, subset: Iterable[int]) -> DualWeakComplementation | None:
    found = delta_from_join_dense(dual(lat), subset)
    return None if found is None else DualWeakComplementation(lat, found.table)


def is_representable(op: UnaryOp) -> frozenset[int] | None:
    """A join-dense (meet-dense for the dual kind) witness set, or None.

    Candidates contain the nonzero join irreducibles and grow by increasing
    size; 0 is never included since it does not change the operation.
    """
    lat = op.host if isinstance(op, WeakComplementation) else dual(op.host)
    base = sorted(lat.join_irreducibles)
    extra = [x for x in range(lat.n) if x not in lat.join_irreducibles and x != lat.bottom]
    le, join_all = lat.le, lat.join_all
    for k in range(len(extra) + 1):
        for more in itertools.combinations(extra, k):
            s = base + list(more)
            if all(join_all(j for j in s if not le(j, x)) == op.table[x] for x in range(lat.n)):
                return frozenset(s)
    return None


def has_nontrivial_delta(lat: FiniteLattice) -> bool:
    """Two meet irreducibles whose ideals together cover every join irreducible."""
    ji = 0
    for j in lat.join_irreducibles:
        ji |= 1 << j
    mi = sorted(lat.meet_irreducibles - {lat.top})
    return any(
        ji & ~(lat.down[m] | lat.down[k]) == 0 for m, k in itertools.combinations(mi, 2)
    )


def smallest_dicomplementation(lat: FiniteLattice) -> DicompLattice:
    delta = delta_from_join_dense(lat, lat.join_irreducibles)
    nabla = nabla_from_meet_dense(lat, lat.meet_irreducibles)
    return DicompLattice(lat, delta, nabla)


# --- congruences -------------------------------------------------------------


def _ops(*ops) -> list[tuple[int, ...]]:
    return [op.table if isinstance(op, UnaryOp) else tuple(op) for op in ops if op is not None]


def con_preserving(lat: FiniteLattice, *ops, con: ConLattice | None = None) -> ConLattice:
    """Lattice congruences compatible with all the given unary operations."""
    con = con if con is not None else all_congruences(lat)
    tables = _ops(*ops)
    return con.filtered(lambda theta: all(theta.preserves(t) for t in tables))


def con_wcl(lat: FiniteLattice, delta, con: ConLattice | None = None) -> ConLattice:
    return con_preserving(lat, delta, con=con)


def con_wdcl(lat: FiniteLattice, nabla, con: ConLattice | None = None) -> ConLattice:
    return con_preserving(lat, nabla, con=con)


def con_wdl(alg: DicompLattice, con: ConLattice | None = None) -> ConLattice:
    return con_preserving(alg.lattice, alg.delta, alg.nabla, con=con)


def principal_wcl_congruence(lat: FiniteLattice, delta, a: int, b: int) -> Congruence:
    return generate(lat, [(a, b)], _ops(delta))


def quotient_op(lat: FiniteLattice, op, theta: Congruence) -> tuple[FiniteLattice, tuple[int, ...]]:
    table = _ops(op)[0]
    if not theta.preserves(table):
        raise NotDeltaPreserving("the congruence does not preserve the operation")
    q, proj = quotient(lat, theta)
    induced = [0] * q.n
    for x in range(lat.n):
        induced[proj[x]] = proj[table[x]]
    return q, tuple(induced)


def quotient_wcl(lat: FiniteLattice, delta, theta: Congruence) -> tuple[FiniteLattice, WeakComplementation]:
    q, table = quotient_op(lat, delta, theta)
    return q, WeakComplementation(q, table)


def quotient_wdcl(lat: FiniteLattice, nabla, theta: Congruence) -> tuple[FiniteLattice, DualWeakComplementation]:
    q, table = quotient_op(lat, nabla, theta)
    return q, DualWeakComplementation(q, table)


def is_subuniverse(lat: FiniteLattice, op, part: Iterable[int]) -> bool:
    """Whether a bounded sublattice is closed under the operation."""
    s = set(part)
    if not is_sublattice(lat, s) or lat.bottom not in s or lat.top not in s:
        raise NotASublattice("part must be a sublattice containing 0 and 1")
    table = _ops(op)[0]
    return all(table[x] in s for x in s)


is_subuniverse_wcl = is_subuniverse


# --- serialisation -----------------------------------------------------------


def algebra_json(lat: FiniteLattice, delta=None, nabla=None) -> str:
    data = {"n": lat.n, "covers": [list(c) for c in lat.covers()]}
    if delta is not None:
        data["delta"] = list(_ops(delta)[0])
    if nabla is not None:
        data["nabla"] = list(_ops(nabla)[0])
    return json.dumps(data)


def algebra_from_json_data(data: dict):
    """Return ``(lattice, delta or None, nabla or None)`` with validation."""
    from .lattice import from_json_data

    lat = from_json_data(data)
    delta = WeakComplementation(lat, tuple(data["delta"])) if "delta" in data else None
    nabla = DualWeakComplementation(lat, tuple(data["nabla"])) if "nabla" in data else None
    if delta is not None and nabla is not None:
        DicompLattice(lat, delta, nabla)
    return lat, delta, nabla
