"""
Limit tuples and order independence
===================================

A curve's limit is a tuple with one entry per member Y, living in the
compactified X/Y.  The same tuple is also computed by blowing up centres
one at a time in an admissible order.
"""

# %%
import collections

import numpy as np

from cornerblowup.compactify import PolyCurve
from cornerblowup.georgescu import (
    curve_limit_tuple,
    random_curve,
    sample_orderings,
    signature,
    vasy_tuple,
    verify_order_independence,
)
from cornerblowup.linalg import contains
from cornerblowup.nbody import NBodySpec, nbody_semilattice

f = nbody_semilattice(NBodySpec(2, 1))
c = PolyCurve.of([1, 3], [1, 1], [2, 2])  # both particles run off together
p = curve_limit_tuple(c, f)
for y in f.members:
    print(y.basis, p[y])
print("signature:", signature(p).to_json(f))

# %%
for o in sample_orderings(f, np.random.default_rng(0), 6):
    print(o.to_json(f), max(np.abs(vasy_tuple(c, f, o)[y].vec - p[y].vec).max() for y in f.members))

# %%
rng = np.random.default_rng(1)
curves = [random_curve(f, rng) for _ in range(100)]
rep = verify_order_independence(f, curves)
print(rep.max_deviation, rep.route_deviation, rep.pairs_checked)

# %%
# Which faces do random curves reach over N=3, d=1?  The members at
# infinity are recorded, and we count how often the bounded members form a
# chain.  This is an observation, not a claim.
f3 = nbody_semilattice(NBodySpec(3, 1))
seen = collections.Counter()
for _ in range(500):
    sig = signature(curve_limit_tuple(random_curve(f3, rng), f3))
    bounded = [y for y in f3.members if y not in sig.at_infinity]
    chain = all(contains(a, b) or contains(b, a) for a in bounded for b in bounded)
    seen[(len(sig.at_infinity), chain)] += 1
for key, n in sorted(seen.items()):
    print(key, n)
