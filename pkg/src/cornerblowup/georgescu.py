"""Points of the closure of the diagonal of X in the product of compactified quotients.

Two routes compute the point reached by a polynomial curve:

* :func:`curve_limit_tuple` takes the limit of the projected curve in each
  compactified quotient X/Y directly;
* :func:`vasy_tuple` walks an admissible ordering of the semilattice, blowing
  up one sphere at a time in hemisphere charts and reading each component
  off the chart where it becomes defined.

The harnesses compare the second route across orderings, and against the
first.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from .compactify import (
    Kind,
    PolyCurve,
    RadialPoint,
    blowup_first_factor,
    curve_limit,
    psi_quotient,
    push_quotient,
    radial_distance,
)
from .linalg import (
    QuotientMap,
    Subspace,
    as_vector,
    contains,
    factor_through,
    orthogonal_complement,
    projector,
    quotient_map,
)
from .semilattice import (
    AdmissibleOrdering,
    Semilattice,
    Tag,
    admissible_orderings,
    random_admissible_ordering,
    reduce_along,
)

TUPLE_TOL = 1e-9


class NotInClosure(ValueError):
    pass


@lru_cache(maxsize=None)
def quotients(f: Semilattice) -> dict[Subspace, QuotientMap]:
    return {y: quotient_map(f.ambient, y) for y in f.members}


@lru_cache(maxsize=None)
def _factor_float(f: Semilattice, small: Subspace, big: Subspace) -> np.ndarray:
    qs = quotients(f)
    r = factor_through(qs[small], qs[big])
    return np.array([[float(x) for x in row] for row in r], dtype=float)


@lru_cache(maxsize=None)
def _strict_pairs(f: Semilattice) -> tuple[tuple[Subspace, Subspace], ...]:
    return tuple((a, b) for a in f.members for b in f.members if a != b and contains(b, a))


@dataclass(frozen=True, eq=False)
class GeorgescuPoint:
    lattice: Semilattice
    components: Mapping[Subspace, RadialPoint]

    def __post_init__(self):
        if set(self.components) != set(self.lattice.members):
            raise ValueError("need exactly one component per member")

    def __getitem__(self, y: Subspace) -> RadialPoint:
        return self.components[y]

    def violations(self, tol: float = TUPLE_TOL) -> list[str]:
        """Closure-compatibility failures, empty for genuine closure points."""
        out = []
        for y, y2 in _strict_pairs(self.lattice):
            a, b = self.components[y], self.components[y2]
            r = _factor_float(self.lattice, y, y2)
            if a.is_interior:
                if not b.is_interior:
                    out.append(f"bounded in X/{y} but not in X/{y2}")
                elif np.linalg.norm(r @ a.vec - b.vec) > tol:
                    out.append(f"interior components of {y} and {y2} disagree")
            else:
                w = r @ a.vec
                if np.linalg.norm(w) > tol and not b.close_to(RadialPoint(Kind.DIRECTION, w), tol):
                    out.append(f"direction of {y} does not induce that of {y2}")
        return out

    def to_json(self) -> dict:
        return {"components": [self.components[y].to_json() for y in self.lattice.members]}


@dataclass(frozen=True)
class FaceSignature:
    at_infinity: frozenset[Subspace]

    def to_json(self, lattice: Semilattice) -> list[int]:
        return sorted(lattice.index(y) for y in self.at_infinity)


def tuple_distance(p: GeorgescuPoint, q: GeorgescuPoint) -> float:
    """Max over members of the hemisphere distance between components."""
    return max(radial_distance(p[y], q[y]) for y in p.lattice.members)


def diagonal(x: Sequence, f: Semilattice) -> GeorgescuPoint:
    x = as_vector(x)
    return GeorgescuPoint(f, {y: RadialPoint.interior(q(x)) for y, q in quotients(f).items()})


def curve_limit_tuple(c: PolyCurve, f: Semilattice) -> GeorgescuPoint:
    return GeorgescuPoint(f, {y: curve_limit(c.project(q)) for y, q in quotients(f).items()})


def signature(p: GeorgescuPoint) -> FaceSignature:
    at_inf = frozenset(y for y, r in p.components.items() if not r.is_interior)
    for y, y2 in _strict_pairs(p.lattice):
        if y not in at_inf and y2 in at_inf:
            raise NotInClosure("bounded components are not upward closed")
    return FaceSignature(at_inf)


def translate(p: GeorgescuPoint, a: Sequence) -> GeorgescuPoint:
    """Translation by a in X: shifts finite components, fixes those at infinity."""
    a = as_vector(a)
    comps = {}
    for y, q in quotients(p.lattice).items():
        r = p[y]
        comps[y] = RadialPoint.interior(r.vec + np.array([float(v) for v in q(a)])) if r.is_interior else r
    return GeorgescuPoint(p.lattice, comps)


@lru_cache(maxsize=256)
def _reduction_tags(f: Semilattice, ordering: AdmissibleOrdering) -> dict:
    return dict(((q, p), t) for q, p, t in reduce_along(f, ordering)[-1].tags)


def vasy_tuple(c: PolyCurve, f: Semilattice, ordering: AdmissibleOrdering) -> GeorgescuPoint:
    """The curve's limit in the iterated blow-up, pushed to every quotient.

    Centres are visited in the given order.  While the current limit point
    stays off a centre's sphere, that member's component is read through the
    chart route of :func:`psi_quotient`.  When it lands on the sphere, the
    component is the first factor of the blown-up chart, members the
    reduction tags as untouched are read off the point before it moves, and
    the walk continues inside the quotient by the centre with only the
    lifted members left.
    """
    tags = _reduction_tags(f, ordering)
    qs = quotients(f)
    comps: dict[Subspace, RadialPoint] = {}
    germ = c
    point = curve_limit(germ)
    comps[f.zero] = point
    pending = list(ordering.sequence)
    while pending:
        p = pending.pop(0)
        dom = germ.dominant()
        if dom is not None and p.contains_vector(dom[1]):
            first = blowup_first_factor(germ, p)
            comps[p] = push_quotient(first, qs[p])
            keep = []
            for q in pending:
                if tags[(q, p)] is Tag.LIFTED:
                    keep.append(q)
                else:
                    comps[q] = psi_quotient(point, qs[q])
            germ = germ.map(projector(orthogonal_complement(p)))
            point = first
            pending = keep
        else:
            comps[p] = psi_quotient(point, qs[p])
    return GeorgescuPoint(f, comps)


def exact_key(c: PolyCurve, f: Semilattice) -> tuple:
    """Exact description of the limit tuple: finite values, or directions scaled to max-abs 1."""
    key = []
    for y in f.members:
        pc = c.project(quotients(f)[y])
        dom = pc.dominant()
        if dom is None:
            key.append(("i", pc.coeffs[0]))
        else:
            m = max(abs(x) for x in dom[1])
            key.append(("d", tuple(x / m for x in dom[1])))
    return tuple(key)


def random_curve(f: Semilattice, rng: np.random.Generator, max_degree: int = 3, max_coeff: int = 4) -> PolyCurve:
    """A rational polynomial curve whose coefficients are drawn from random members.

    Drawing coefficients from members (not just from X) makes limit points
    land on the spheres of the semilattice often enough to matter.
    """
    n = f.ambient
    hosts = list(f.members) + [Subspace.whole(n)] * max(2, len(f.members) // 3)
    deg = int(rng.integers(0, max_degree + 1))
    coeffs = []
    for _ in range(deg + 1):
        host = hosts[int(rng.integers(len(hosts)))]
        v = [Fraction(0)] * n
        for row in host.basis:
            w = int(rng.integers(-max_coeff, max_coeff + 1))
            v = [a + w * b for a, b in zip(v, row)]
        coeffs.append(tuple(v))
    if deg > 0 and not any(coeffs[-1]):
        coeffs[-1] = tuple(Fraction(int(rng.integers(1, max_coeff + 1))) * b for b in Subspace.whole(n).basis[int(rng.integers(n))])
    return PolyCurve(tuple(coeffs))


@dataclass
class OrderReport:
    max_deviation: float = 0.0
    pairs_checked: int = 0
    counterexamples: list = field(default_factory=list)
    per_pair: dict = field(default_factory=dict)
    orderings: list = field(default_factory=list)
    route_deviation: float = 0.0
    tolerance: float = TUPLE_TOL

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_json(self) -> dict:
        return {
            "max_deviation": self.max_deviation,
            "pairs_checked": self.pairs_checked,
            "counterexamples": self.counterexamples,
            "per_pair": [{"orderings": list(k), "max_deviation": v} for k, v in sorted(self.per_pair.items())],
            "orderings": self.orderings,
            "route_deviation": self.route_deviation,
            "tolerance": self.tolerance,
        }


def verify_order_independence(
    f: Semilattice,
    curves: Iterable[PolyCurve],
    orderings: Sequence[AdmissibleOrdering] | None = None,
    limit: int = 24,
    tol: float = TUPLE_TOL,
) -> OrderReport:
    """Compare :func:`vasy_tuple` across admissible orderings, and with the direct route."""
    if orderings is None:
        orderings = admissible_orderings(f, limit)
    rep = OrderReport(orderings=[o.to_json(f) for o in orderings], tolerance=tol)
    pairs = list(itertools.combinations(range(len(orderings)), 2))
    for i, j in pairs:
        rep.per_pair[(i, j)] = 0.0
    for c in curves:
        tuples = [vasy_tuple(c, f, o) for o in orderings]
        direct = curve_limit_tuple(c, f)
        for i, j in pairs:
            d = tuple_distance(tuples[i], tuples[j])
            rep.pairs_checked += 1
            rep.per_pair[(i, j)] = max(rep.per_pair[(i, j)], d)
            rep.max_deviation = max(rep.max_deviation, d)
            if d > tol:
                rep.counterexamples.append({"curve": c.to_json(), "orderings": [i, j], "deviation": d})
        for i, t in enumerate(tuples):
            d = tuple_distance(t, direct)
            rep.route_deviation = max(rep.route_deviation, d)
            if d > tol:
                rep.counterexamples.append({"curve": c.to_json(), "orderings": [i, "direct"], "deviation": d})
    return rep


def sample_orderings(f: Semilattice, rng: np.random.Generator, count: int) -> list[AdmissibleOrdering]:
    """The canonical ordering followed by distinct random ones, at most ``count`` in all."""
    first = admissible_orderings(f, count)
    if len(first) < count:
        return first
    seen = {first[0].sequence}
    out = [first[0]]
    for _ in range(20 * count):
        if len(out) >= count:
            break
        o = random_admissible_ordering(f, rng)
        if o.sequence not in seen:
            seen.add(o.sequence)
            out.append(o)
    return out


@dataclass
class InjectivityReport:
    max_deviation: float = 0.0
    min_separation: float = float("inf")
    pairs_checked: int = 0
    equivalent_pairs: int = 0
    counterexamples: list = field(default_factory=list)
    tolerance: float = TUPLE_TOL

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_json(self) -> dict:
        return {
            "max_deviation": self.max_deviation,
            "min_separation": None if self.min_separation == float("inf") else self.min_separation,
            "pairs_checked": self.pairs_checked,
            "equivalent_pairs": self.equivalent_pairs,
            "counterexamples": self.counterexamples,
            "tolerance": self.tolerance,
        }


def verify_injectivity(f: Semilattice, curves: Sequence[PolyCurve], tol: float = TUPLE_TOL) -> InjectivityReport:
    """Curves with different exact limit data must give tuples more than tol apart.

    Two curves count as the same asymptotic class when :func:`exact_key`
    agrees; such pairs must instead land within tol of each other.
    """
    curves = list(curves)
    keys = [exact_key(c, f) for c in curves]
    pts = [curve_limit_tuple(c, f) for c in curves]
    rep = InjectivityReport(tolerance=tol)
    for i, j in itertools.combinations(range(len(curves)), 2):
        d = tuple_distance(pts[i], pts[j])
        rep.pairs_checked += 1
        if keys[i] == keys[j]:
            rep.equivalent_pairs += 1
            rep.max_deviation = max(rep.max_deviation, d)
            if d > tol:
                rep.counterexamples.append({"kind": "split", "curves": [i, j], "distance": d})
        else:
            rep.min_separation = min(rep.min_separation, d)
            if d <= tol:
                rep.counterexamples.append({"kind": "collision", "curves": [i, j], "distance": d})
    return rep
