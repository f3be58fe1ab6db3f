"""
Closing a family, orderings and one-step reduction
==================================================
"""

# %%
from cornerblowup.linalg import Subspace
from cornerblowup.semilattice import (
    admissible_orderings,
    chain_lattice,
    close,
    reduce,
    reduce_along,
)

f = close([Subspace.span([[0, 1]]), Subspace.span([[1, 0]]), Subspace.span([[1, 1]])])
print(len(f), [m.basis for m in f.members])

# %%
# Three incomparable lines: every order of them is admissible.
for o in admissible_orderings(f, 10):
    print(o.to_json(f))

# %%
# Blowing up a minimal member drops exactly one element.  The others are
# tagged by how they sit relative to the centre.
fam = reduce(f, f.nontrivial[0])
print(len(f), "->", len(fam))
for q, p, tag in fam.tags:
    print(f.index(q), tag.value)

# %%
# In a chain the larger member contains the centre and is lifted.
c = chain_lattice()
print([len(s) for s in reduce_along(c, admissible_orderings(c, 1)[0])])
print([t.value for _, _, t in reduce(c, c.nontrivial[0]).tags])
