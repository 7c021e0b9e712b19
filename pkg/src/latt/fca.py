"""Formal contexts, concept lattices and concept algebras.

Object and attribute sets are handled internally as integer bitmasks.  The
public derivation operators accept and return frozensets of indices.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import CapExceeded, FormatError
from .lattice import FiniteLattice, validate
from .wdl import DicompLattice, DualWeakComplementation, WeakComplementation

MAX_SIDE = 1024


def _mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << int(i)
    return m


def _indices(mask: int) -> frozenset[int]:
    return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)


@dataclass(frozen=True, eq=False)
class FormalContext:
    objects: tuple[str, ...]
    attributes: tuple[str, ...]
    incidence: np.ndarray  # |G| x |M| booleans

    def __post_init__(self):
        inc = np.asarray(self.incidence, dtype=bool).reshape(len(self.objects), len(self.attributes))
        object.__setattr__(self, "incidence", inc)
        for side in (self.objects, self.attributes):
            if len(set(side)) != len(side):
                raise FormatError("labels must be unique within objects and within attributes")

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_attributes(self) -> int:
        return len(self.attributes)

    @cached_property
    def _rows(self) -> list[int]:
        return [_mask(np.flatnonzero(r)) for r in self.incidence]

    @cached_property
    def _cols(self) -> list[int]:
        return [_mask(np.flatnonzero(c)) for c in self.incidence.T]

    def intent_mask(self, objs: int) -> int:
        out = (1 << self.n_attributes) - 1
        for g, row in enumerate(self._rows):
            if objs >> g & 1:
                out &= row
        return out

    def extent_mask(self, attrs: int) -> int:
        out = (1 << self.n_objects) - 1
        for m, col in enumerate(self._cols):
            if attrs >> m & 1:
                out &= col
        return out

    def closure_mask(self, objs: int) -> int:
        return self.extent_mask(self.intent_mask(objs))


def derive_objects(ctx: FormalContext, objs: Iterable[int]) -> frozenset[int]:
    """A' : the attributes shared by all objects in A."""
    return _indices(ctx.intent_mask(_mask(objs)))


def derive_attributes(ctx: FormalContext, attrs: Iterable[int]) -> frozenset[int]:
    """B' : the objects having all attributes in B."""
    return _indices(ctx.extent_mask(_mask(attrs)))


@dataclass(frozen=True)
class Concept:
    extent: frozenset[int]
    intent: frozenset[int]

    def labelled(self, ctx: FormalContext) -> tuple[list[str], list[str]]:
        return (
            [ctx.objects[g] for g in sorted(self.extent)],
            [ctx.attributes[m] for m in sorted(self.intent)],
        )


def _extents(ctx: FormalContext) -> list[int]:
    """All extents in lectic order (NextClosure)."""
    n = ctx.n_objects
    current = ctx.closure_mask(0)
    out = [current]
    full = (1 << n) - 1
    while current != full:
        for g in reversed(range(n)):
            bit = 1 << g
            if current & bit:
                current &= ~bit
                continue
            candidate = ctx.closure_mask(current | bit)
            # lectic test: nothing new below g
            if (candidate & ~current) & (bit - 1) == 0:
                current = candidate
                out.append(current)
                break
        else:  # pragma: no cover - the loop always finds a successor
            break
    return out


def concept_lattice(ctx: FormalContext) -> tuple[FiniteLattice, list[Concept]]:
    if ctx.n_objects > MAX_SIDE or ctx.n_attributes > MAX_SIDE:
        raise CapExceeded(f"contexts are limited to {MAX_SIDE} objects and attributes")
    extents = _extents(ctx)
    concepts = [Concept(_indices(e), _indices(ctx.intent_mask(e))) for e in extents]
    k = len(extents)
    leq = np.array([[a & ~b == 0 for b in extents] for a in extents], dtype=bool).reshape(k, k)
    return validate(leq), concepts


def concept_algebra(ctx: FormalContext) -> tuple[DicompLattice, list[Concept]]:
    """Concept lattice with (A,B) -> ((G-A)'', (G-A)') and (A,B) -> ((M-B)', (M-B)'')."""
    lat, concepts = concept_lattice(ctx)
    extents = [_mask(c.extent) for c in concepts]
    where = {e: i for i, e in enumerate(extents)}
    all_g = (1 << ctx.n_objects) - 1
    all_m = (1 << ctx.n_attributes) - 1
    delta, nabla = [], []
    for c, e in zip(concepts, extents):
        delta.append(where[ctx.closure_mask(all_g & ~e)])
        nabla.append(where[ctx.extent_mask(all_m & ~_mask(c.intent))])
    alg = DicompLattice(
        lat,
        WeakComplementation(lat, tuple(delta)),
        DualWeakComplementation(lat, tuple(nabla)),
    )
    return alg, concepts


def context_from_lattice(
    lat: FiniteLattice, objects: Sequence[int], attributes: Sequence[int]
) -> FormalContext:
    """The context (J, M, <=) for subsets J, M of the lattice."""
    objects, attributes = list(objects), list(attributes)
    inc = lat.leq[np.ix_(objects, attributes)] if objects and attributes else np.zeros(
        (len(objects), len(attributes)), dtype=bool
    )
    return FormalContext(
        tuple(str(g) for g in objects), tuple(str(m) for m in attributes), inc
    )


def standard_context(lat: FiniteLattice) -> FormalContext:
    """(Ji(L), Mi(L), <=), objects and attributes in index order."""
    return context_from_lattice(lat, sorted(lat.join_irreducibles), sorted(lat.meet_irreducibles))


def phi_map(lat: FiniteLattice, objects: Sequence[int], attributes: Sequence[int], concepts: list[Concept]) -> list[int]:
    """x -> index of the concept (J meet (x], M meet [x)) in ``concepts``."""
    where = {c.extent: i for i, c in enumerate(concepts)}
    return [
        where[frozenset(i for i, g in enumerate(objects) if lat.le(g, x))] for x in range(lat.n)
    ]


# --- file formats ----------------------------------------------------------


def read_cxt(text: str) -> FormalContext:
    """Burmeister format: ``B``, optional name line, counts, names, rows of X/."""
    lines = text.splitlines()
    if not lines or lines[0].strip() != "B":
        raise FormatError("a .cxt file starts with a line containing 'B'")
    pos = 1
    while pos < len(lines) and not lines[pos].strip().isdigit():
        pos += 1  # the (usually empty) context name line
    try:
        g, m = int(lines[pos]), int(lines[pos + 1])
    except (IndexError, ValueError) as exc:
        raise FormatError("missing object/attribute counts") from exc
    pos += 2
    while pos < len(lines) and not lines[pos].strip():
        pos += 1
    body = lines[pos:]
    if len(body) < g + m + g:
        raise FormatError("truncated .cxt file")
    objects = tuple(s.strip() for s in body[:g])
    attributes = tuple(s.strip() for s in body[g : g + m])
    rows = body[g + m : g + m + g]
    inc = np.zeros((g, m), dtype=bool)
    for i, row in enumerate(rows):
        row = row.strip()
        if len(row) != m or set(row) - set("Xx."):
            raise FormatError(f"bad incidence row {i + 1}: {row!r}")
        inc[i] = [ch in "Xx" for ch in row]
    return FormalContext(objects, attributes, inc)


def write_cxt(ctx: FormalContext) -> str:
    out = ["B", "", str(ctx.n_objects), str(ctx.n_attributes), ""]
    out += list(ctx.objects) + list(ctx.attributes)
    out += ["".join("X" if v else "." for v in row) for row in ctx.incidence]
    return "\n".join(out) + "\n"


def read_csv(text: str) -> FormalContext:
    """First row: attribute names after a corner cell; first column: object names."""
    rows = [r for r in csv.reader(io.StringIO(text)) if r]
    if not rows:
        raise FormatError("empty csv context")
    attributes = tuple(s.strip() for s in rows[0][1:])
    objects, inc = [], []
    for r in rows[1:]:
        cells = (r[1:] + [""] * len(attributes))[: len(attributes)]
        objects.append(r[0].strip())
        inc.append([c.strip().upper() == "X" for c in cells])
    return FormalContext(tuple(objects), attributes, np.array(inc, dtype=bool).reshape(len(objects), len(attributes)))
