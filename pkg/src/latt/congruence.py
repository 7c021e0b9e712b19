"""Lattice congruences.

A congruence is stored as ``block_of``: every element is mapped to the least
member of its class, which makes equal congruences compare equal.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import FullCongruenceInHsum, NotACongruence
from .lattice import FiniteLattice, validate


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if rx < ry:
            self.parent[ry] = rx
        else:
            self.parent[rx] = ry
        return True

    def labels(self) -> tuple[int, ...]:
        # roots are always the least member, since the smaller root wins
        return tuple(self.find(x) for x in range(len(self.parent)))


def normalize(labels: Sequence[int]) -> tuple[int, ...]:
    """Relabel an arbitrary class labelling by least members."""
    least: dict = {}
    for x, lab in enumerate(labels):
        least.setdefault(lab, x)
    return tuple(least[lab] for lab in labels)


@dataclass(frozen=True, eq=False)
class Congruence:
    """An equivalence on the elements of ``host`` (normally a congruence)."""

    host: FiniteLattice
    block_of: tuple[int, ...]

    def __eq__(self, other):
        if not isinstance(other, Congruence):
            return NotImplemented
        return self.block_of == other.block_of and (
            self.host is other.host or self.host == other.host
        )

    def __hash__(self):
        return hash(self.block_of)

    def __repr__(self):
        return f"Congruence({self.blocks()})"

    def same(self, x: int, y: int) -> bool:
        return self.block_of[x] == self.block_of[y]

    def blocks(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for x, b in enumerate(self.block_of):
            out.setdefault(b, []).append(x)
        return list(out.values())

    def nontrivial_blocks(self) -> list[frozenset[int]]:
        return [frozenset(b) for b in self.blocks() if len(b) > 1]

    def block(self, x: int) -> frozenset[int]:
        r = self.block_of[x]
        return frozenset(y for y, b in enumerate(self.block_of) if b == r)

    @property
    def n_blocks(self) -> int:
        return len(set(self.block_of))

    def is_identity(self) -> bool:
        return self.n_blocks == self.host.n

    def is_full(self) -> bool:
        return self.n_blocks == 1

    def le(self, other: Congruence) -> bool:
        """Inclusion of relations."""
        ob = other.block_of
        return all(ob[x] == ob[b] for x, b in enumerate(self.block_of))

    def meet(self, other: Congruence) -> Congruence:
        return Congruence(self.host, normalize(list(zip(self.block_of, other.block_of))))

    def join(self, other: Congruence) -> Congruence:
        uf = _UnionFind(self.host.n)
        for x in range(self.host.n):
            uf.union(x, self.block_of[x])
            uf.union(x, other.block_of[x])
        return Congruence(self.host, uf.labels())

    def is_congruence(self) -> bool:
        lat, b = self.host, self.block_of
        mr, jr = lat.meet_rows, lat.join_rows
        for x in range(lat.n):
            r = b[x]
            if r == x:
                continue
            for z in range(lat.n):
                if b[mr[x][z]] != b[mr[r][z]] or b[jr[x][z]] != b[jr[r][z]]:
                    return False
        return True

    def preserves(self, table: Sequence[int]) -> bool:
        """Whether ``x ~ y`` implies ``table[x] ~ table[y]``."""
        b = self.block_of
        return all(b[table[x]] == b[table[r]] for x, r in enumerate(b))

    def to_json(self) -> str:
        return json.dumps({"blocks": self.blocks()})


def identity(lat: FiniteLattice) -> Congruence:
    return Congruence(lat, tuple(range(lat.n)))


def full(lat: FiniteLattice) -> Congruence:
    return Congruence(lat, (0,) * lat.n)


def eq(lat: FiniteLattice, classes: Iterable[Iterable[int]]) -> Congruence:
    """Equivalence whose classes are the given sets plus singletons."""
    uf = _UnionFind(lat.n)
    for cls in classes:
        cls = list(cls)
        for x in cls[1:]:
            uf.union(cls[0], x)
    return Congruence(lat, uf.labels())


def eps(lat: FiniteLattice, *sets: Iterable[int]) -> Congruence:
    """The equivalence with the given pairwise disjoint sets as classes."""
    sets = [set(s) for s in sets]
    if any(not s for s in sets):
        raise ValueError("eps needs nonempty sets")
    return eq(lat, sets)


def from_json(lat: FiniteLattice, text: str) -> Congruence:
    data = json.loads(text)
    return eq(lat, data["blocks"])


def generate(
    lat: FiniteLattice,
    pairs: Iterable[tuple[int, int]],
    operations: Sequence[Sequence[int]] = (),
) -> Congruence:
    """Least congruence containing ``pairs`` and compatible with ``operations``.

    Each merge of two classes queues the translated pairs ``(x^z, y^z)``,
    ``(x v z, y v z)`` and ``(f(x), f(y))`` for the unary operations.
    """
    mr, jr = lat.meet_rows, lat.join_rows
    uf = _UnionFind(lat.n)
    pending = list(pairs)
    while pending:
        x, y = pending.pop()
        if not uf.union(x, y):
            continue
        mx, my, jx, jy = mr[x], mr[y], jr[x], jr[y]
        for z in range(lat.n):
            pending.append((mx[z], my[z]))
            pending.append((jx[z], jy[z]))
        for op in operations:
            pending.append((op[x], op[y]))
    return Congruence(lat, uf.labels())


def principal_congruence(lat: FiniteLattice, a: int, b: int) -> Congruence:
    return generate(lat, [(a, b)])


def join_closure(lat: FiniteLattice, generators: Iterable[Congruence]) -> list[Congruence]:
    """All joins of the generators together with the identity."""
    gens = list(dict.fromkeys(generators))
    seen = {identity(lat)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for theta in frontier:
            for g in gens:
                j = theta.join(g)
                if j not in seen:
                    seen.add(j)
                    nxt.append(j)
        frontier = nxt
    return sorted(seen, key=lambda c: (-c.n_blocks, c.block_of))


class ConLattice:
    """A set of congruences ordered by inclusion.

    ``congruences`` is sorted (finest first, ties by block labelling) and
    ``order`` is the lattice on their indices.
    """

    def __init__(self, congruences: Iterable[Congruence]):
        self.congruences = sorted(set(congruences), key=lambda c: (-c.n_blocks, c.block_of))

    def __len__(self) -> int:
        return len(self.congruences)

    def __iter__(self):
        return iter(self.congruences)

    def __contains__(self, theta) -> bool:
        return theta in self._index

    def __repr__(self):
        return f"ConLattice({len(self)} congruences)"

    @cached_property
    def _index(self) -> dict:
        return {c: i for i, c in enumerate(self.congruences)}

    def index(self, theta: Congruence) -> int:
        return self._index[theta]

    @cached_property
    def order(self) -> FiniteLattice:
        cs = self.congruences
        k = len(cs)
        labels = np.array([c.block_of for c in cs])  # k x n
        # theta <= phi iff phi is constant on the classes of theta
        leq = np.empty((k, k), dtype=bool)
        for i, c in enumerate(cs):
            rep = np.array(c.block_of)
            leq[i] = (labels == labels[:, rep]).all(axis=1)
        return validate(leq)

    def filtered(self, keep) -> "ConLattice":
        return ConLattice(c for c in self.congruences if keep(c))

    def atoms(self) -> list[Congruence]:
        o = self.order
        return [self.congruences[i] for i in sorted(o.atoms)]


def all_congruences(lat: FiniteLattice) -> ConLattice:
    gens = [principal_congruence(lat, a, b) for a, b in lat.covers()]
    return ConLattice(join_closure(lat, gens))


def con_filtered(lat: FiniteLattice, fix_bottom: bool, fix_top: bool, con: ConLattice | None = None) -> ConLattice:
    """Congruences with a singleton class at 0 and/or at 1."""
    con = con if con is not None else all_congruences(lat)

    def keep(theta):
        if fix_bottom and len(theta.block(lat.bottom)) > 1:
            return False
        if fix_top and len(theta.block(lat.top)) > 1:
            return False
        return True

    return con.filtered(keep)


def quotient(lat: FiniteLattice, theta: Congruence) -> tuple[FiniteLattice, list[int]]:
    """Quotient lattice and projection ``x -> index of x/theta``."""
    if not theta.is_congruence():
        raise NotACongruence("the partition is not compatible with meet and join")
    reps = sorted(set(theta.block_of))
    pos = {r: i for i, r in enumerate(reps)}
    proj = [pos[b] for b in theta.block_of]
    jr = lat.join_rows
    k = len(reps)
    leq = np.zeros((k, k), dtype=bool)
    for i, r in enumerate(reps):
        for j, s in enumerate(reps):
            leq[i, j] = theta.same(jr[r][s], s)
    return validate(leq), proj


def _glue(host: FiniteLattice, parts: list[tuple[Congruence, list[int]]]) -> Congruence:
    uf = _UnionFind(host.n)
    for theta, where in parts:
        for x, r in enumerate(theta.block_of):
            uf.union(where[x], where[r])
    return Congruence(host, uf.labels())


def osum_congruence(alpha: Congruence, beta: Congruence, host: FiniteLattice | None = None) -> Congruence:
    """alpha (+) beta on the ordinal sum of the two hosts."""
    from .constructions import ordinal_sum, ordinal_sum_maps

    lo, hi = alpha.host, beta.host
    host = host if host is not None else ordinal_sum(lo, hi)
    left, right = ordinal_sum_maps(lo, hi)
    return _glue(host, [(alpha, left), (beta, right)])


def hsum_congruence(alpha: Congruence, beta: Congruence, host: FiniteLattice | None = None) -> Congruence:
    """alpha [+] beta on the horizontal sum; both must be proper congruences."""
    from .constructions import horizontal_sum, horizontal_sum_maps

    if alpha.is_full() or beta.is_full():
        raise FullCongruenceInHsum("horizontal sums of congruences need proper summands")
    lo, hi = alpha.host, beta.host
    host = host if host is not None else horizontal_sum(lo, hi)
    left, right = horizontal_sum_maps(lo, hi)
    return _glue(host, [(alpha, left), (beta, right)])


def is_subdirectly_irreducible(conlat: ConLattice) -> bool:
    o = conlat.order
    return len(o.upper_covers[o.bottom]) == 1
