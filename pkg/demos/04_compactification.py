"""
Radial compactification and curve limits
========================================
"""

# %%
import numpy as np

from cornerblowup.compactify import (
    PolyCurve,
    RadialPoint,
    curve_limit,
    psi_quotient,
    push_quotient,
    quotient_limit_via_blowup,
    theta,
)
from cornerblowup.linalg import Subspace, quotient_map

print(theta(RadialPoint.interior([3, 4])) * np.sqrt(26))
print(theta(RadialPoint.direction([1, 0])))

# %%
# Projecting to X/Y extends to directions, except those inside Y.
q = quotient_map(2, Subspace.span([[1, 0]]))
print(push_quotient(RadialPoint.direction([1, 1]), q))
print(push_quotient(RadialPoint.direction([1, 0]), q))
print(psi_quotient(RadialPoint.direction([1, 1]), q))

# %%
# c(t) = (t, 5) runs off along the x-axis.  In X it tends to the direction
# (1, 0); in X/x-axis it stays at 5.  The blown-up chart recovers the 5.
c = PolyCurve.of([0, 5], [1, 0])
print(curve_limit(c))
print(curve_limit(c.project(q)), quotient_limit_via_blowup(c, q))
print(np.round(theta(RadialPoint.interior(c(1e6))), 6))
