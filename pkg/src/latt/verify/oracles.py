"""Slow reference computations that share no code with the fast paths."""

from __future__ import annotations

from typing import Iterator, Sequence

from ..lattice import FiniteLattice


def set_partitions(n: int) -> Iterator[tuple[int, ...]]:
    """All partitions of range(n) as restricted growth strings."""
    labels = [0] * n

    def rec(i: int, k: int):
        if i == n:
            yield tuple(labels)
            return
        for b in range(k + 1):
            labels[i] = b
            yield from rec(i + 1, max(k, b + 1))

    if n == 0:
        yield ()
        return
    yield from rec(1, 1)


def _compatible(lat: FiniteLattice, part: Sequence[int]) -> bool:
    mr, jr = lat.meet_rows, lat.join_rows
    n = lat.n
    for x in range(n):
        for y in range(x + 1, n):
            if part[x] != part[y]:
                continue
            for z in range(n):
                if part[mr[x][z]] != part[mr[y][z]] or part[jr[x][z]] != part[jr[y][z]]:
                    return False
    return True


def brute_force_congruences(lat: FiniteLattice) -> list[tuple[int, ...]]:
    """Every partition that is compatible with meet and join."""
    return [p for p in set_partitions(lat.n) if _compatible(lat, p)]


def preserves(part: Sequence[int], table: Sequence[int]) -> bool:
    n = len(part)
    return all(
        part[table[x]] == part[table[y]] for x in range(n) for y in range(x + 1, n) if part[x] == part[y]
    )


def brute_force_count(lat: FiniteLattice, *tables: Sequence[int]) -> int:
    return sum(1 for p in brute_force_congruences(lat) if all(preserves(p, t) for t in tables))
