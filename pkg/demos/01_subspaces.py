"""
Exact subspaces and their meets
===============================

Subspaces of Q^n are stored by a reduced row-echelon basis, so two
descriptions of the same subspace compare equal.
"""

# %%
from fractions import Fraction

from cornerblowup.linalg import Subspace, contains, intersect, quotient_map

# the diagonal of Q^2, given two different ways
a = Subspace.span([[1, 1]])
b = Subspace.kernel([[3, -3]], 2)
print(a == b, a.basis)

# %%
# Meets are exact.  Particle 1 pinned, and particles 1 and 2 colliding,
# only meet at the origin.
y1 = Subspace.kernel([[1, 0]], 2)
print(intersect(y1, a).is_zero, contains(a, Subspace.zero(2)))

# %%
# The quotient map X -> X/Y is a matrix whose rows span the orthogonal
# complement of Y.
q = quotient_map(2, a)
print(q.matrix, q([Fraction(1, 2), Fraction(3, 2)]))
