"""Isomorph-free enumeration of all lattices with n elements.

Removing an atom from a finite lattice leaves a lattice (the rest is closed
under joins and still has 0), so every n-element lattice arises from an
(n-1)-element one by adding a new atom.  A new atom ``a`` is described by the
set ``F`` of old elements above it.  ``K + a`` is a lattice exactly when

* ``F`` is an up-set of ``K`` avoiding 0,
* the meet in ``K`` of two members of ``F`` is in ``F`` or is 0,
* for ``k != 0`` the set ``[k)`` meets ``F`` in a set with a least element,
  which is then ``a v k``.

Duplicates are rejected by canonical construction path: a child is kept only
when its new atom lies in the automorphism orbit of the child's canonical
atom, the one with the least canonical index; children of one parent are
deduplicated by certificate.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

import numpy as np

from .errors import CapExceeded
from .iso import automorphism_orbits, canonical_labelling
from .lattice import FiniteLattice, from_json_data, to_json, validate

MAX_N = 9


@dataclass
class LatticeCatalog:
    n: int
    lattices: list[FiniteLattice] = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.lattices)

    def __iter__(self):
        return iter(self.lattices)

    def __len__(self):
        return len(self.lattices)


def _upsets(lat: FiniteLattice) -> Iterator[int]:
    """Bitmasks of the nonempty up-sets of ``lat`` avoiding the bottom."""
    elems = [x for x in reversed(lat.linear_extension) if x != lat.bottom]
    up = lat.up

    def rec(i: int, chosen: int):
        if i == len(elems):
            if chosen:
                yield chosen
            return
        x = elems[i]
        # x may join only if everything above it already has
        if up[x] & ~(1 << x) & ~chosen == 0:
            yield from rec(i + 1, chosen | (1 << x))
        yield from rec(i + 1, chosen)

    yield from rec(0, 0)


def _admissible(lat: FiniteLattice, f: int) -> bool:
    mr, up = lat.meet_rows, lat.up
    members = [x for x in range(lat.n) if f >> x & 1]
    for x, y in itertools.combinations(members, 2):
        m = mr[x][y]
        if m != lat.bottom and not f >> m & 1:
            return False
    for k in range(lat.n):
        if k == lat.bottom:
            continue
        above = f & up[k]
        # the least element of the set, if any, sits below every member
        least = [x for x in members if above >> x & 1 and above & ~up[x] == 0]
        if not least:
            return False
    return True


def _add_atom(lat: FiniteLattice, f: int) -> FiniteLattice:
    n = lat.n
    leq = np.zeros((n + 1, n + 1), dtype=bool)
    leq[:n, :n] = lat.leq
    leq[n, n] = True
    leq[lat.bottom, n] = True
    for x in range(n):
        if f >> x & 1:
            leq[n, x] = True
    return validate(leq)


def _canonical_atom(lat: FiniteLattice, perm: list[int]) -> int:
    return min(lat.atoms, key=lambda a: perm[a])


def _children(parent: FiniteLattice) -> Iterator[FiniteLattice]:
    seen = set()
    for f in _upsets(parent):
        if not _admissible(parent, f):
            continue
        child = _add_atom(parent, f)
        cert, perm = canonical_labelling(child)
        if cert in seen:
            continue
        new_atom = child.n - 1
        canon = _canonical_atom(child, perm)
        if canon != new_atom:
            orbit = automorphism_orbits(child)
            if orbit[canon] != orbit[new_atom]:
                continue
        seen.add(cert)
        yield child


def _relabel(lat: FiniteLattice) -> FiniteLattice:
    cert, perm = canonical_labelling(lat)
    inv = np.argsort(perm)
    return validate(lat.leq[np.ix_(inv, inv)])


def generate_lattices(n: int) -> Iterator[FiniteLattice]:
    """Stream one representative per isomorphism class (generation order)."""
    if not 1 <= n <= MAX_N:
        raise CapExceeded(f"lattice enumeration supports 1 <= n <= {MAX_N}")
    level = [validate(np.ones((1, 1), dtype=bool))]
    if n >= 2:
        level = [validate(np.array([[True, True], [False, True]]))]
    for _ in range(3, n + 1):
        level = [child for parent in level for child in _children(parent)]
    yield from level


def enumerate_lattices(n: int, cache_dir: str | Path | None = None) -> LatticeCatalog:
    """Complete catalog, sorted by canonical certificate, each in canonical labelling."""
    if cache_dir is not None:
        path = Path(cache_dir) / f"lattices_{n}.jsonl"
        if path.exists():
            return load_catalog(path, n)
    reps = [_relabel(lat) for lat in generate_lattices(n)]
    reps.sort(key=lambda lat: canonical_labelling(lat)[0])
    catalog = LatticeCatalog(n, reps)
    if cache_dir is not None:
        Path(cache_dir).mkdir(parents=True, exist_ok=True)
        save_catalog(catalog, Path(cache_dir) / f"lattices_{n}.jsonl")
    return catalog


def save_catalog(catalog: LatticeCatalog, path: str | Path) -> None:
    with open(path, "w") as fh:
        for lat in catalog:
            fh.write(to_json(lat) + "\n")


def load_catalog(path: str | Path, n: int | None = None) -> LatticeCatalog:
    lats = []
    with open(path) as fh:
        for line in fh:
            if line.strip():
                lats.append(from_json_data(json.loads(line)))
    size = n if n is not None else (lats[0].n if lats else 0)
    return LatticeCatalog(size, lats)


def enumerate_wcl_algebras(n: int, cache_dir=None):
    """Every (lattice, weak complementation) with the lattice up to isomorphism."""
    from .wdl import enumerate_weak_complementations

    for lat in enumerate_lattices(n, cache_dir):
        for delta in enumerate_weak_complementations(lat):
            yield lat, delta


# --- independent oracle --------------------------------------------------------


def _oracle_is_lattice(n: int, lt: set) -> bool:
    le = [[x == y or (x, y) in lt for y in range(n)] for x in range(n)]
    for x in range(n):
        for y in range(n):
            lower = [z for z in range(n) if le[z][x] and le[z][y]]
            upper = [z for z in range(n) if le[x][z] and le[y][z]]
            if not any(all(le[w][z] for w in lower) for z in lower):
                return False
            if not any(all(le[z][w] for w in upper) for z in upper):
                return False
    return True


def oracle_lattice_count(n: int) -> int:
    """Count n-element lattices by brute force over naturally labelled posets.

    Element 0 is the bottom, ``n-1`` the top, and ``i < j`` whenever ``i``
    lies below ``j``.  Isomorphism classes are told apart by the least order
    matrix over all permutations of the middle elements.
    """
    if n <= 2:
        return 1
    mid = list(range(1, n - 1))
    pairs = list(itertools.combinations(mid, 2))
    perms = [(0, *p, n - 1) for p in itertools.permutations(mid)]
    perm_arr = np.array(perms)
    classes = set()
    for bits in range(1 << len(pairs)):
        lt = {p for i, p in enumerate(pairs) if bits >> i & 1}
        if any((a, b) in lt and (b, c) in lt and (a, c) not in lt for a, b in lt for c in mid):
            continue
        lt |= {(0, x) for x in range(1, n)} | {(x, n - 1) for x in mid}
        if not _oracle_is_lattice(n, lt):
            continue
        leq = np.eye(n, dtype=bool)
        for a, b in lt:
            leq[a, b] = True
        permuted = leq[perm_arr[:, :, None], perm_arr[:, None, :]].reshape(len(perms), -1)
        codes = np.packbits(permuted, axis=1)
        classes.add(min(map(bytes, codes)))
    return len(classes)
