"""
The N-body family and its symmetries
====================================
"""

# %%
import itertools

import numpy as np

from cornerblowup.linalg import apply_to_subspace
from cornerblowup.nbody import NBodySpec, generators, nbody_semilattice, symmetry_action
from cornerblowup.semilattice import act, close

for N, d in [(2, 1), (2, 3), (3, 1), (3, 3)]:
    print(N, d, len(nbody_semilattice(NBodySpec(N, d))))

# %%
# Relabelling particles and applying -id in every particle permute the
# members and commute with taking the closure.
spec = NBodySpec(3, 2)
f = nbody_semilattice(spec)
gens = generators(spec)
actions = [symmetry_action(spec, permutation=p) for p in itertools.permutations(range(3))]
actions.append(symmetry_action(spec, orthogonal=-np.eye(2)))
print(all(act(f, g) == f for g in actions))
print(all(close([apply_to_subspace(g, y) for y in gens], 6) == act(f, g) for g in actions))
