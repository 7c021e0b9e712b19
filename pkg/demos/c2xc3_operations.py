"""Weak complementations on C2 x C3 and the congruences they keep.

Run with ``python demos/c2xc3_operations.py``.
"""

from latt import build, con_preserving, enumerate_dicomplementations, enumerate_weak_complementations, name_shape, pretty
from latt.verify.oracles import brute_force_count


def show_table(lat, op):
    return " ".join(f"{lat.labels[x]}->{lat.labels[op(x)]}" for x in lat.elements_by_label())


lat = build("chain:2 * chain:3")
print(f"C2 x C3 has {lat.n} elements with labels {', '.join(lat.labels[x] for x in lat.elements_by_label())}")

deltas = enumerate_weak_complementations(lat)
print(f"\n{len(deltas)} weak complementations:")
for i, delta in enumerate(deltas):
    con = con_preserving(lat, delta)
    oracle = brute_force_count(lat, delta.table)
    print(f"  [{i}] {show_table(lat, delta)}")
    print(f"      {len(con)} congruences (set-partition count {oracle}), shape {pretty(name_shape(con.order))}")

pairs = enumerate_dicomplementations(lat)
print(f"\n{len(pairs)} weak dicomplementations; Con_WDL sizes:")
sizes = {}
for pair in pairs:
    k = len(con_preserving(lat, pair.delta, pair.nabla))
    sizes[k] = sizes.get(k, 0) + 1
for k, count in sorted(sizes.items()):
    print(f"  {count} pair(s) with {k} congruences")
