"""Radial compactification of a vector space and polynomial curve limits.

A point of the compactification is either a finite vector or a direction
(an open half-line, stored as a unit vector).  ``theta`` embeds both kinds
in the closed upper hemisphere, first coordinate >= 0.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import charts
from .linalg import (
    QuotientMap,
    Subspace,
    Vector,
    as_vector,
    format_fraction,
    matvec,
    orthogonal_complement,
    projector,
)

SPLIT_TOL = 1e-12
DIRECTION_TOL = 1e-9


class Kind(enum.Enum):
    INTERIOR = "interior"
    DIRECTION = "direction"


@dataclass(frozen=True, eq=False)
class RadialPoint:
    kind: Kind
    vec: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vec, dtype=float)
        if self.kind is Kind.DIRECTION:
            nv = np.linalg.norm(v)
            if nv == 0:
                raise ValueError("a direction needs a nonzero vector")
            v = v / nv
        object.__setattr__(self, "vec", v)

    @classmethod
    def interior(cls, x) -> "RadialPoint":
        return cls(Kind.INTERIOR, np.asarray([float(a) for a in x]))

    @classmethod
    def direction(cls, v) -> "RadialPoint":
        return cls(Kind.DIRECTION, np.asarray([float(a) for a in v]))

    @property
    def is_interior(self) -> bool:
        return self.kind is Kind.INTERIOR

    @property
    def dim(self) -> int:
        return self.vec.shape[0]

    def close_to(self, other: "RadialPoint", tol: float = DIRECTION_TOL) -> bool:
        return self.kind is other.kind and self.dim == other.dim and bool(np.linalg.norm(self.vec - other.vec) <= tol)

    def __repr__(self) -> str:
        return f"RadialPoint({self.kind.value}, {np.array2string(self.vec, precision=6)})"

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "vec": [float(a) for a in self.vec]}

    @classmethod
    def from_json(cls, obj: dict) -> "RadialPoint":
        return cls(Kind(obj["kind"]), np.asarray(obj["vec"], dtype=float))


class _Undefined:
    """Result of pushing a point of the blown-up sphere through its own quotient."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "UNDEFINED"

    def __bool__(self):
        return False


UNDEFINED = _Undefined()


def theta(p: RadialPoint) -> np.ndarray:
    """Interior x -> (1, x)/<x>;  direction v -> (0, v)."""
    if p.is_interior:
        y = np.concatenate([[1.0], p.vec])
        return y / np.linalg.norm(y)
    return np.concatenate([[0.0], p.vec])


def theta_inverse(q, tol: float = SPLIT_TOL) -> RadialPoint:
    q = np.asarray(q, dtype=float)
    charts.check_octant(q, 1)
    if q[0] > tol:
        return RadialPoint(Kind.INTERIOR, q[1:] / q[0])
    return RadialPoint(Kind.DIRECTION, q[1:])


def radial_distance(a: RadialPoint, b: RadialPoint) -> float:
    return float(np.linalg.norm(theta(a) - theta(b)))


def act_radial(g, p: RadialPoint) -> RadialPoint:
    """Linear action extended to the compactification."""
    g = np.asarray(g, dtype=float)
    return RadialPoint(p.kind, g @ p.vec)


def act_octant(g, q) -> np.ndarray:
    """The same action seen on hemisphere coordinates: g on the last n slots, renormalised."""
    g = np.asarray(g, dtype=float)
    q = np.asarray(q, dtype=float)
    y = np.concatenate([q[:1], g @ q[1:]])
    return y / np.linalg.norm(y)


@lru_cache(maxsize=None)
def _float_matrix(m) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in m], dtype=float)


def push_quotient(p: RadialPoint, q: QuotientMap, tol: float = SPLIT_TOL):
    """Extend x -> x + Y to the compactification, away from the sphere of Y.

    Directions inside Y give UNDEFINED: no continuous value exists there
    without blowing up the sphere of Y first.
    """
    if p.dim != q.source:
        raise ValueError("point and quotient map have different source dimensions")
    m = _float_matrix(q.matrix)
    w = m @ p.vec
    if p.is_interior:
        return RadialPoint(Kind.INTERIOR, w)
    if np.linalg.norm(w) <= tol:
        return UNDEFINED
    return RadialPoint(Kind.DIRECTION, w)


@lru_cache(maxsize=None)
def _splitting(y: Subspace) -> tuple[np.ndarray, np.ndarray]:
    """Float orthogonal projectors onto the complement of y and onto y."""
    return _float_matrix(projector(orthogonal_complement(y))), _float_matrix(projector(y))


def psi_quotient(p: RadialPoint, q: QuotientMap) -> RadialPoint:
    """The chart route: Theta^{-1} . first factor . Psi . Theta, then X/Y coordinates.

    Theta(p) is split orthogonally into eta = (y_0, complement part) and
    mu = (part in Y); Psi's first factor eta/|eta| is a hemisphere point of
    the complement, read back through Theta^{-1}.  Only valid off the sphere
    of Y, where Psi is defined.
    """
    perp, par = _splitting(q.kernel)
    y = theta(p)
    eta = np.concatenate([y[:1], perp @ y[1:]])
    mu = par @ y[1:]
    first, _ = charts.psi_map(eta, mu)
    back = theta_inverse(first)
    return push_quotient(back, q)


@dataclass(frozen=True)
class PolyCurve:
    """t -> sum_k t^k coeffs[k], exact rational coefficients, lowest degree first."""

    coeffs: tuple[Vector, ...]

    def __post_init__(self):
        cs = tuple(as_vector(c) for c in self.coeffs)
        if not cs:
            raise ValueError("a curve needs at least the constant coefficient")
        if len({len(c) for c in cs}) != 1:
            raise ValueError("coefficients have different lengths")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def of(cls, *coeffs) -> "PolyCurve":
        return cls(tuple(as_vector(c) for c in coeffs))

    @property
    def ambient(self) -> int:
        return len(self.coeffs[0])

    def dominant(self) -> tuple[int, Vector] | None:
        """(degree, coefficient) of the top nonzero term of positive degree."""
        for k in range(len(self.coeffs) - 1, 0, -1):
            if any(self.coeffs[k]):
                return k, self.coeffs[k]
        return None

    def map(self, m: Sequence[Sequence[Fraction]]) -> "PolyCurve":
        return PolyCurve(tuple(matvec(m, c) for c in self.coeffs))

    def project(self, q: QuotientMap) -> "PolyCurve":
        return self.map(q.matrix)

    def scale(self, c) -> "PolyCurve":
        c = Fraction(c)
        return PolyCurve(tuple(tuple(c * x for x in v) for v in self.coeffs))

    def __call__(self, t: float) -> np.ndarray:
        out = np.zeros(self.ambient)
        for k, c in enumerate(self.coeffs):
            out += (t**k) * np.array([float(x) for x in c])
        return out

    def to_json(self) -> dict:
        return {"coeffs": [[format_fraction(x) for x in c] for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "PolyCurve":
        return cls(tuple(as_vector(c) for c in obj["coeffs"]))


def curve_limit(c: PolyCurve) -> RadialPoint:
    """Limit of c(t) as t -> infinity: the constant term, or the top coefficient's direction."""
    if c.ambient < 1:
        raise ValueError("curve in a zero-dimensional space")
    dom = c.dominant()
    if dom is None:
        return RadialPoint.interior(c.coeffs[0])
    return RadialPoint.direction(dom[1])


def _lead(vecs: Sequence[Vector]) -> tuple[int, Vector] | None:
    for k in range(len(vecs) - 1, -1, -1):
        if any(vecs[k]):
            return k, vecs[k]
    return None


def _fnorm(v) -> float:
    return float(np.linalg.norm([float(x) for x in v]))


def psi_tilde_limit(c: PolyCurve, y: Subspace):
    """Polar data (z, r, mu) of the limit of c in the blow-up along the sphere of y.

    With Theta(c(t)) proportional to (1, c(t)), split as eta = (1, c_perp) and
    mu = c_Y, the limit is z = lim eta/|eta| and (r, mu) = lim (|eta|, mu)
    normalised.  Leading terms are chosen exactly, so points on the front
    face (r == 0) come out without dividing by a vanishing |eta|.  All
    vectors are in X coordinates: z has length n + 1, mu has length n.
    """
    n = c.ambient
    perp = projector(orthogonal_complement(y))
    par = projector(y)
    cp = [matvec(perp, v) for v in c.coeffs]
    cy = [matvec(par, v) for v in c.coeffs]
    lp = _lead(cp[1:])
    if lp is None:
        d_eta, lead_eta = 0, (Fraction(1),) + cp[0]
    else:
        d_eta, lead_eta = lp[0] + 1, (Fraction(0),) + lp[1]
    lm = _lead(cy)
    z = np.array([float(a) for a in lead_eta])
    z /= np.linalg.norm(z)
    if lm is None or lm[0] < d_eta:
        return z, 1.0, np.zeros(n)
    if lm[0] > d_eta:
        mu = np.array([float(a) for a in lm[1]])
        return z, 0.0, mu / np.linalg.norm(mu)
    a = _fnorm(lead_eta)
    mu = np.array([float(x) for x in lm[1]])
    s = np.hypot(a, np.linalg.norm(mu))
    return z, a / s, mu / s


def blowup_first_factor(c: PolyCurve, y: Subspace) -> RadialPoint:
    """First factor of the blown-up limit, as a point of the compactified complement of y."""
    z, r, mu = psi_tilde_limit(c, y)
    first, _ = charts.psi_tilde(z, r, mu)
    return theta_inverse(first)


def quotient_limit_via_blowup(c: PolyCurve, q: QuotientMap) -> RadialPoint:
    """Limit of c + Y in the compactified quotient, read off the blown-up chart."""
    return push_quotient(blowup_first_factor(c, q.kernel), q)
