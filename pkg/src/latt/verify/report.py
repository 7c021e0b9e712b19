"""Theorem reports and a small deterministic parallel map."""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable

from ..lattice import FiniteLattice


def lattice_witness(lat: FiniteLattice) -> dict:
    return {"n": lat.n, "covers": [list(c) for c in lat.covers()]}


def _plain(value: Any) -> Any:
    if isinstance(value, FiniteLattice):
        return lattice_witness(value)
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else str(value)
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [_plain(v) for v in items]
    if hasattr(value, "table"):
        return list(value.table)
    if hasattr(value, "block_of"):
        return value.blocks()
    return value


@dataclass
class TheoremReport:
    """Outcome of one suite; ``passed`` exactly when no check failed."""

    suite: str
    params: dict
    checks: int = 0
    failures: list[dict] = field(default_factory=list)
    flags: list[dict] = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, item: str, message: str = "", **witness) -> bool:
        self.checks += 1
        if not ok:
            self.failures.append({"item": item, "message": message, "witness": _plain(witness)})
        return ok

    def flag(self, item: str, message: str, **witness) -> None:
        self.flags.append({"item": item, "message": message, "witness": _plain(witness)})

    def failed_items(self) -> set[str]:
        return {f["item"] for f in self.failures}

    def merge(self, other: TheoremReport) -> None:
        self.checks += other.checks
        self.failures += other.failures
        self.flags += other.flags
        for k, v in other.summary.items():
            self.summary[k] = v

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "params": self.params,
            "passed": self.passed,
            "checks": self.checks,
            "failures": self.failures,
            "flags": self.flags,
            "summary": _plain(self.summary),
            "wall_time": round(self.wall_time, 3),
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    def lines(self, limit: int = 20) -> list[str]:
        status = "PASS" if self.passed else "FAIL"
        out = [
            f"suite {self.suite} {self.params}: {status} "
            f"({self.checks} checks, {len(self.failures)} failures, {len(self.flags)} flags, "
            f"{self.wall_time:.1f}s)"
        ]
        for key, value in self.summary.items():
            out.append(f"  {key}: {_plain(value)}")
        for f in self.failures[:limit]:
            out.append(f"  FAIL {f['item']}: {f['message']}")
        if len(self.failures) > limit:
            out.append(f"  ... {len(self.failures) - limit} more failures")
        for f in self.flags[:limit]:
            out.append(f"  flag {f['item']}: {f['message']}")
        if len(self.flags) > limit:
            out.append(f"  ... {len(self.flags) - limit} more flags")
        return out


class Timer:
    def __init__(self, report: TheoremReport):
        self.report = report

    def __enter__(self):
        self.start = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.wall_time = time.perf_counter() - self.start
        return False


def threads() -> int:
    try:
        return max(1, int(os.environ.get("LATT_THREADS", "1")))
    except ValueError:
        return 1


def pmap(fn: Callable, items: Iterable) -> list:
    """``list(map(fn, items))``, spread over LATT_THREADS processes; order kept."""
    items = list(items)
    k = threads()
    if k == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=k) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * k))))
