"""Finite bounded lattices on the index set ``0..n-1``.

A lattice is stored as its order matrix together with the meet and join
tables.  Bottom and top are computed, so a construction is free to put them
at any index.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Iterable

import numpy as np

from .errors import (
    CapExceeded,
    FormatError,
    NotALattice,
    NotAPartialOrder,
    NotComparable,
    NotASublattice,
    Unbounded,
)

MAX_ELEMENTS = 4096


@dataclass(frozen=True, eq=False)
class FiniteLattice:
    leq: np.ndarray
    meet: np.ndarray
    join: np.ndarray
    bottom: int
    top: int

    @property
    def n(self) -> int:
        return len(self.leq)

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other):
        # same indexing and same order; the tables then agree as well
        if not isinstance(other, FiniteLattice):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.leq, other.leq))

    def __hash__(self):
        return hash((self.n, np.packbits(self.leq).tobytes()))

    def __repr__(self):
        return f"FiniteLattice(n={self.n}, covers={self.covers()})"

    # fast scalar access: nested python lists beat numpy indexing in loops
    @cached_property
    def meet_rows(self) -> list[list[int]]:
        return self.meet.tolist()

    @cached_property
    def join_rows(self) -> list[list[int]]:
        return self.join.tolist()

    @cached_property
    def up(self) -> list[int]:
        """``up[x]`` is the bitmask of the principal filter ``[x)``."""
        return [_row_mask(row) for row in self.leq]

    @cached_property
    def down(self) -> list[int]:
        """``down[x]`` is the bitmask of the principal ideal ``(x]``."""
        return [_row_mask(col) for col in self.leq.T]

    def le(self, x: int, y: int) -> bool:
        return bool(self.up[x] >> y & 1)

    def lt(self, x: int, y: int) -> bool:
        return x != y and self.le(x, y)

    def comparable(self, x: int, y: int) -> bool:
        return self.le(x, y) or self.le(y, x)

    @cached_property
    def _cover_matrix(self) -> np.ndarray:
        strict = self.leq & ~np.eye(self.n, dtype=bool)
        s = strict.astype(np.int32)
        return strict & ~((s @ s) > 0)

    @cached_property
    def lower_covers(self) -> tuple[tuple[int, ...], ...]:
        cm = self._cover_matrix
        return tuple(tuple(int(i) for i in np.flatnonzero(cm[:, x])) for x in range(self.n))

    @cached_property
    def upper_covers(self) -> tuple[tuple[int, ...], ...]:
        cm = self._cover_matrix
        return tuple(tuple(int(i) for i in np.flatnonzero(cm[x])) for x in range(self.n))

    def covers(self) -> list[tuple[int, int]]:
        """All pairs ``(a, b)`` with ``a`` covered by ``b``, sorted."""
        return [(a, b) for a in range(self.n) for b in self.upper_covers[a]]

    def is_cover(self, a: int, b: int) -> bool:
        return b in self.upper_covers[a]

    @cached_property
    def heights(self) -> tuple[int, ...]:
        """Length of the longest chain from bottom to each element."""
        h = [0] * self.n
        for x in self.linear_extension:
            for y in self.upper_covers[x]:
                h[y] = max(h[y], h[x] + 1)
        return tuple(h)

    @cached_property
    def depths(self) -> tuple[int, ...]:
        d = [0] * self.n
        for x in reversed(self.linear_extension):
            for y in self.lower_covers[x]:
                d[y] = max(d[y], d[x] + 1)
        return tuple(d)

    @cached_property
    def linear_extension(self) -> tuple[int, ...]:
        # sorting by size of the principal ideal is a linear extension
        sizes = self.leq.sum(axis=0)
        return tuple(sorted(range(self.n), key=lambda x: (int(sizes[x]), x)))

    @cached_property
    def join_irreducibles(self) -> frozenset[int]:
        return frozenset(x for x in range(self.n) if len(self.lower_covers[x]) == 1)

    @cached_property
    def meet_irreducibles(self) -> frozenset[int]:
        return frozenset(x for x in range(self.n) if len(self.upper_covers[x]) == 1)

    @cached_property
    def atoms(self) -> frozenset[int]:
        return frozenset(self.upper_covers[self.bottom]) - {self.bottom}

    @cached_property
    def coatoms(self) -> frozenset[int]:
        return frozenset(self.lower_covers[self.top]) - {self.top}

    def join_all(self, elements: Iterable[int]) -> int:
        return reduce(lambda x, y: self.join_rows[x][y], elements, self.bottom)

    def meet_all(self, elements: Iterable[int]) -> int:
        return reduce(lambda x, y: self.meet_rows[x][y], elements, self.top)

    def ideal(self, x: int) -> frozenset[int]:
        return frozenset(_members(self.down[x]))

    def filter(self, x: int) -> frozenset[int]:
        return frozenset(_members(self.up[x]))

    def interval_elements(self, a: int, b: int) -> list[int]:
        return _members(self.up[a] & self.down[b])

    def is_chain(self) -> bool:
        return all(len(c) <= 1 for c in self.upper_covers)

    @cached_property
    def labels(self) -> tuple[str, ...]:
        """Human labels ``0, a1, ..., 1`` assigned by height, then index."""
        order = self.elements_by_label()
        names = [""] * self.n
        for i, x in enumerate(order):
            names[x] = f"a{i}"
        names[self.bottom] = "0"
        if self.n > 1:
            names[self.top] = "1"
        return tuple(names)

    def elements_by_label(self) -> list[int]:
        """Elements in the order their labels read: 0, a1, a2, ..., 1."""
        if self.n == 1:
            return [self.bottom]
        middle = sorted(
            (x for x in range(self.n) if x not in (self.bottom, self.top)),
            key=lambda x: (self.heights[x], x),
        )
        return [self.bottom, *middle, self.top]


def _row_mask(row) -> int:
    return int.from_bytes(np.packbits(row[::-1]).tobytes(), "big") >> (-len(row) % 8)


def _members(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _bound_table(leq: np.ndarray, lower: bool) -> np.ndarray:
    """Greatest lower (or least upper) bounds; ``NotALattice`` if one is missing."""
    order = leq if lower else leq.T
    n = len(order)
    rank = order.sum(axis=0)  # size of the principal ideal, strictly monotone
    table = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        common = order & order[:, [x]]  # common[z, y]: z below both x and y
        cand = np.where(common, rank[:, None], -1).argmax(axis=0)
        ok = ~common | order[:, cand]
        if not ok.all():
            y = int(np.flatnonzero(~ok.all(axis=0))[0])
            kind = "meet" if lower else "join"
            raise NotALattice(f"elements {x} and {y} have no {kind}")
        table[x] = cand
    return table


def validate(candidate_order) -> FiniteLattice:
    """Check an order matrix and return the lattice it describes."""
    leq = np.array(candidate_order, dtype=bool)
    if leq.ndim != 2 or leq.shape[0] != leq.shape[1] or leq.shape[0] == 0:
        raise NotAPartialOrder("order matrix must be square and nonempty")
    n = len(leq)
    if n > MAX_ELEMENTS:
        raise CapExceeded(f"{n} elements exceeds the cap of {MAX_ELEMENTS}")
    if not leq.diagonal().all():
        raise NotAPartialOrder("relation is not reflexive")
    if (leq & leq.T & ~np.eye(n, dtype=bool)).any():
        raise NotAPartialOrder("relation is not antisymmetric")
    li = leq.astype(np.int32)
    if ((li @ li > 0) & ~leq).any():
        raise NotAPartialOrder("relation is not transitive")
    bottoms = np.flatnonzero(leq.all(axis=1))
    tops = np.flatnonzero(leq.all(axis=0))
    if len(bottoms) == 0 or len(tops) == 0:
        raise Unbounded("order has no least or no greatest element")
    meet = _bound_table(leq, lower=True)
    join = _bound_table(leq, lower=False)
    for arr in (leq, meet, join):
        arr.setflags(write=False)
    return FiniteLattice(leq, meet, join, int(bottoms[0]), int(tops[0]))


def closure_of_covers(n: int, covers: Iterable[tuple[int, int]]) -> np.ndarray:
    """Reflexive transitive closure of a relation given as pairs."""
    leq = np.eye(n, dtype=bool)
    for a, b in covers:
        if not (0 <= a < n and 0 <= b < n):
            raise NotAPartialOrder(f"pair ({a}, {b}) out of range for n={n}")
        leq[a, b] = True
    # repeated squaring; log2(n) rounds suffice
    while True:
        li = leq.astype(np.int32)
        nxt = (li @ li) > 0
        if np.array_equal(nxt, leq):
            return leq
        leq = nxt


def from_covers(n: int, covers: Iterable[tuple[int, int]]) -> FiniteLattice:
    covers = list(covers)
    lat = validate(closure_of_covers(n, covers))
    for a, b in covers:
        if not lat.is_cover(a, b):
            raise NotAPartialOrder(f"pair ({a}, {b}) is not a cover relation")
    return lat


def dual(lat: FiniteLattice) -> FiniteLattice:
    leq = lat.leq.T.copy()
    leq.setflags(write=False)
    return FiniteLattice(leq, lat.join, lat.meet, lat.top, lat.bottom)


def sublattice(lat: FiniteLattice, elements: Iterable[int]) -> tuple[FiniteLattice, list[int]]:
    """Induced order on ``elements`` (kept in increasing index order).

    Returns the new lattice and the list mapping new indices to old ones.
    Raises ``NotASublattice`` when the subset is not closed under meet and join.
    """
    elems = sorted(set(elements))
    s = set(elems)
    for x in elems:
        for y in elems:
            if lat.meet_rows[x][y] not in s or lat.join_rows[x][y] not in s:
                raise NotASublattice(f"{sorted(s)} is not closed under meet and join")
    return validate(lat.leq[np.ix_(elems, elems)]), elems


def is_sublattice(lat: FiniteLattice, elements: Iterable[int]) -> bool:
    s = set(elements)
    return bool(s) and all(
        lat.meet_rows[x][y] in s and lat.join_rows[x][y] in s for x in s for y in s
    )


def interval(lat: FiniteLattice, a: int, b: int) -> FiniteLattice:
    if not lat.le(a, b):
        raise NotComparable(f"{a} is not below {b}")
    return sublattice(lat, lat.interval_elements(a, b))[0]


def to_json(lat: FiniteLattice, **extra) -> str:
    data = {"n": lat.n, "covers": [list(c) for c in lat.covers()]}
    data.update(extra)
    return json.dumps(data)


def from_json_data(data: dict) -> FiniteLattice:
    try:
        n = int(data["n"])
        covers = [(int(a), int(b)) for a, b in data["covers"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad lattice JSON: {exc}") from exc
    return from_covers(n, covers)


def from_json(text: str) -> FiniteLattice:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"bad JSON: {exc}") from exc
    return from_json_data(data)


def to_dot(lat: FiniteLattice, labels: list[str] | None = None, name: str = "L") -> str:
    """Hasse diagram in Graphviz syntax, bottom drawn lowest."""
    labels = list(labels) if labels is not None else list(lat.labels)
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=circle];"]
    for x in range(lat.n):
        lines.append(f'  {x} [label="{labels[x]}"];')
    for h in sorted(set(lat.heights)):
        same = " ".join(str(x) for x in range(lat.n) if lat.heights[x] == h)
        lines.append(f"  {{rank=same; {same}}}")
    for a, b in lat.covers():
        lines.append(f"  {a} -> {b} [arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"
