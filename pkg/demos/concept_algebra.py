"""From a formal context to its concept lattice with both operations.

Uses the context whose incidence is "not equal" on three objects, whose
concept lattice is the cube C2^3, then compares the concept operations with
the smallest dicomplementation of a lattice read back through its standard
context.
"""

import numpy as np

from latt import FormalContext, build, concept_algebra, smallest_dicomplementation
from latt.fca import phi_map, standard_context, write_cxt

ctx = FormalContext(("g1", "g2", "g3"), ("m1", "m2", "m3"), ~np.eye(3, dtype=bool))
print(write_cxt(ctx))
alg, concepts = concept_algebra(ctx)
for i, c in enumerate(concepts):
    objs, attrs = c.labelled(ctx)
    print(f"{i}: extent {objs} intent {attrs}  delta -> {alg.delta(i)}  nabla -> {alg.nabla(i)}")

lat = build("chain:3 | chain:4")
std = standard_context(lat)
alg, concepts = concept_algebra(std)
phi = phi_map(lat, sorted(lat.join_irreducibles), sorted(lat.meet_irreducibles), concepts)
small = smallest_dicomplementation(lat)
same = all(alg.delta(phi[x]) == phi[small.delta(x)] and alg.nabla(phi[x]) == phi[small.nabla(x)] for x in range(lat.n))
print(f"\nN5 through its standard context: concept operations match the smallest pair: {same}")
