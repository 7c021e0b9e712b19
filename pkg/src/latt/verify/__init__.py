"""Exhaustive verification suites; each returns a :class:`TheoremReport`."""

from __future__ import annotations

from .maxima import verify_lattice_maxima, verify_wcl_maxima, verify_wdcl_maxima, verify_wdl_maxima
from .quotients import verify_quotient_size_lemmas
from .report import TheoremReport
from .sums import verify_sum_structures

SUITES = {
    "lat": lambda k: verify_lattice_maxima(k),
    "wcl": lambda k: verify_wcl_maxima(k),
    "wdcl": lambda k: verify_wdcl_maxima(k),
    "wdl": lambda k: verify_wdl_maxima(k),
    # for the sum suite the size bound applies to the ordinal summands
    "sums": lambda k: verify_sum_structures(size_cap=k, hsum_cap=k + 1),
    "quotients": lambda k: verify_quotient_size_lemmas(k),
}

MAX_N = {"lat": 9, "wcl": 9, "wdcl": 9, "wdl": 8, "sums": 6, "quotients": 8}


def run_suite(name: str, max_n: int) -> TheoremReport:
    return SUITES[name](max_n)


__all__ = [
    "SUITES",
    "MAX_N",
    "TheoremReport",
    "run_suite",
    "verify_lattice_maxima",
    "verify_wcl_maxima",
    "verify_wdcl_maxima",
    "verify_wdl_maxima",
    "verify_sum_structures",
    "verify_quotient_size_lemmas",
]
