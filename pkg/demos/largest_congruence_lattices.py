"""Largest congruence lattices of weakly complemented lattices, size by size.

Prints the leading counts for each size and shows the ordinal sum
C_{n-3} (+) C2^2 with the coatom swap, whose count 2^(n-4)+3 sits above the
value 2^(n-4)+1 listed for that family.
"""

import sys

from latt import build, con_preserving, enumerate_weak_complementations
from latt.verify.maxima import expected_top_four, records, top_values

n_max = int(sys.argv[1]) if len(sys.argv) > 1 else 7

for n in range(4, n_max + 1):
    recs = records(n, "wcl")
    tops = top_values(recs)
    print(f"n={n}: {len(recs)} algebras, top counts {tops}, listed {[int(v) for v in expected_top_four(n)]}")

print()
for n in range(5, n_max + 2):
    lat = build(f"chain:{n - 3} + bool:2")
    counts = sorted(len(con_preserving(lat, d)) for d in enumerate_weak_complementations(lat))
    print(f"C{n - 3} (+) C2^2 (n={n}): counts {counts}; 2^(n-4)+1 = {2 ** (n - 4) + 1}")
