"""Iterated blow-ups of radially compactified vector spaces along semilattices of subspaces."""
from .charts import (
    CoordinatePermutation,
    ModelSubmanifold,
    OctantPoint,
    b_left_inverse,
    b_map,
    blow_down,
    boundary_depth,
    kappa,
    kappa_inverse,
    psi_map,
    psi_tilde,
    upsilon,
    zeta,
)
from .compactify import (
    UNDEFINED,
    Kind,
    PolyCurve,
    RadialPoint,
    curve_limit,
    psi_quotient,
    push_quotient,
    theta,
    theta_inverse,
)
from .georgescu import (
    FaceSignature,
    GeorgescuPoint,
    curve_limit_tuple,
    diagonal,
    signature,
    vasy_tuple,
    verify_injectivity,
    verify_order_independence,
)
from .linalg import QuotientMap, Subspace, contains, intersect, quotient_map
from .nbody import NBodySpec, generators, nbody_semilattice, symmetry_action
from .semilattice import (
    AdmissibleOrdering,
    Semilattice,
    Tag,
    act,
    admissible_orderings,
    close,
    is_clean,
    reduce,
)

__version__ = "0.1.0"
