"""Explicit chart maps for blow-ups of the local models R^n_k and sphere octants.

Everything here is floating point and vectorised over leading axes: a batch
of points is an array whose last axis holds the coordinates.  Octants use the
first-components convention, i.e. the first k coordinates are the
non-negative ones.

Tolerances: ``TOL`` for point invariants, ``COMPOSE_TOL`` for identities
between composed maps.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

TOL = 1e-12
COMPOSE_TOL = 1e-10


class ChartError(ValueError):
    pass


def _norm(a):
    return np.linalg.norm(a, axis=-1)


def check_octant(coords, k: int, tol: float = TOL) -> None:
    """Raise unless every row of ``coords`` is a unit vector with its first k entries >= 0."""
    coords = np.asarray(coords, dtype=float)
    if coords.shape[-1] < k:
        raise ChartError(f"octant index k={k} exceeds the dimension {coords.shape[-1]}")
    if np.any(np.abs(_norm(coords) - 1.0) > tol):
        raise ChartError("point is not on the unit sphere")
    if k and np.any(coords[..., :k] < -tol):
        raise ChartError("negative coordinate in the non-negative block")


@dataclass(frozen=True, eq=False)
class OctantPoint:
    """A point of the sphere octant S^{n-1}_k in R^n."""

    k: int
    coords: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coords, dtype=float)
        object.__setattr__(self, "coords", c)
        check_octant(c, self.k)

    @classmethod
    def normalized(cls, v, k: int) -> "OctantPoint":
        v = np.asarray(v, dtype=float)
        return cls(k, v / np.linalg.norm(v))

    @property
    def n(self) -> int:
        return self.coords.shape[-1]

    def __array__(self, dtype=None, copy=None):
        return self.coords if dtype is None else self.coords.astype(dtype)

    def __len__(self) -> int:
        return self.n


@dataclass(frozen=True)
class ModelSubmanifold:
    """L_I = {x in R^n_k : x_i = 0 for i in I}, with 1-based indices in I."""

    n: int
    k: int
    I: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "I", frozenset(self.I))
        if not 0 <= self.k <= self.n:
            raise ChartError("need 0 <= k <= n")
        if not self.I <= set(range(1, self.n + 1)):
            raise ChartError("I must be a subset of {1..n}")

    @property
    def is_trivial(self) -> bool:
        # codimension zero: the normal sphere is empty
        return not self.I

    def as_centre(self) -> "ModelSubmanifold":
        if self.is_trivial:
            raise ChartError("cannot blow up along a codimension-zero submanifold")
        return self


def boundary_depth(m: ModelSubmanifold) -> tuple[int, int, int]:
    """(boundary depth, codimension, dimension) of L_I."""
    b = len(m.I & set(range(1, m.k + 1)))
    c = len(m.I)
    return b, c, m.n - c


@dataclass(frozen=True)
class CoordinatePermutation:
    """An explicit reordering of coordinates: ``apply(v)[i] == v[order[i]]``."""

    order: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.order) != list(range(len(self.order))):
            raise ChartError("not a permutation")

    def apply(self, v):
        return np.asarray(v)[..., list(self.order)]

    def inverse(self) -> "CoordinatePermutation":
        inv = [0] * len(self.order)
        for i, o in enumerate(self.order):
            inv[o] = i
        return CoordinatePermutation(tuple(inv))

    @classmethod
    def canonical(cls, n: int, k: int, n2: int, k2: int) -> "CoordinatePermutation":
        """R^n_k x R^{n2}_{k2} -> R^{n+n2}_{k+k2}: (x', x'', y', y'') -> (x', y', x'', y'')."""
        xp = list(range(k))
        xpp = list(range(k, n))
        yp = list(range(n, n + k2))
        ypp = list(range(n + k2, n + n2))
        return cls(tuple(xp + yp + xpp + ypp))


# -- blow-up of R^n_l x R^{n'}_{l'} along R^n_l x {0} -------------------------


class BlownUpPoint(NamedTuple):
    """A point of [R^n_l x R^{n'}_{l'} : R^n_l x {0}] as a disjoint-union member.

    ``on_front`` marks the boundary hemisphere (second entry is a direction),
    otherwise the second entry is a nonzero vector of R^{n'}_{l'}.
    """

    x: np.ndarray
    second: np.ndarray
    on_front: bool


@dataclass(frozen=True, eq=False)
class LocalBlowupPoint:
    x: np.ndarray
    xi: OctantPoint
    r: float

    def __post_init__(self):
        object.__setattr__(self, "x", np.asarray(self.x, dtype=float))
        if self.r < 0:
            raise ChartError("radial coordinate must be non-negative")
        if self.xi.n == 0:
            raise ChartError("blow-up along a codimension-zero centre")


def kappa(x, xi, r: float) -> BlownUpPoint:
    """Generalised spherical coordinates: (x, xi) on the front face when r == 0, else (x, r xi)."""
    if r < 0:
        raise ChartError("radial coordinate must be non-negative")
    x = np.asarray(x, dtype=float)
    xi = np.asarray(xi, dtype=float)
    if r == 0:
        return BlownUpPoint(x, xi, True)
    return BlownUpPoint(x, r * xi, False)


def kappa_inverse(p: BlownUpPoint) -> tuple[np.ndarray, np.ndarray, float]:
    if p.on_front:
        return p.x, p.second, 0.0
    r = float(np.linalg.norm(p.second))
    if r == 0:
        raise ChartError("interior points have a nonzero normal part")
    return p.x, p.second / r, r


def blow_down(x, xi, r):
    """beta(x, xi, r) = (x, r xi); works on batches with r of shape (...,)."""
    x = np.asarray(x, dtype=float)
    xi = np.asarray(xi, dtype=float)
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ChartError("radial coordinate must be non-negative")
    return x, r[..., None] * xi


# -- the pair blow-up lemma on sphere octants --------------------------------


def upsilon(phi, psi):
    """(phi, (psi_1, psi~)) -> (psi_1 phi, psi~).

    phi lies in S^{n-1}_k (length n), psi in S^{n'+1}_{k'+1} (length n'+2);
    the result lies in S^{n+n'} restricted to R^n_k x R^{n'+1}_{k'}.
    """
    phi = np.asarray(phi, dtype=float)
    psi = np.asarray(psi, dtype=float)
    if np.any(psi[..., 0] < -TOL) or np.any(psi[..., 0] > 1 + TOL):
        raise ChartError("psi_1 must lie in [0, 1]")
    if np.any(np.abs(_norm(phi) - 1) > TOL) or np.any(np.abs(_norm(psi) - 1) > TOL):
        raise ChartError("inputs must be unit vectors")
    return np.concatenate([psi[..., :1] * phi, psi[..., 1:]], axis=-1)


def psi_map(eta, mu, tol: float = TOL):
    """(eta, mu) -> (eta/|eta|, (|eta|, mu)), defined off {0} x S^{n'}_{k'}.

    Raises ChartError at the blow-up centre (|eta| <= tol); boundary points of
    the blow-up are reached through :func:`psi_tilde` instead.
    """
    eta = np.asarray(eta, dtype=float)
    mu = np.asarray(mu, dtype=float)
    total = np.sqrt(_norm(eta) ** 2 + _norm(mu) ** 2)
    if np.any(np.abs(total - 1) > tol):
        raise ChartError("(eta, mu) must be a unit vector")
    a = _norm(eta)
    if np.any(a <= tol):
        raise ChartError("point lies on the blow-up centre; use psi_tilde boundary data")
    return eta / a[..., None], np.concatenate([a[..., None], mu], axis=-1)


def psi_tilde(z, r, mu):
    """The extension of psi_map to the blown-up octant, in polar chart data.

    A point of the blow-up is given by z in S^{n-1}_k, r >= 0 and mu with
    r^2 + |mu|^2 = 1; r == 0 are the front-face points.  Returns (z, (r, mu)).
    """
    z = np.asarray(z, dtype=float)
    mu = np.asarray(mu, dtype=float)
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ChartError("radial coordinate must be non-negative")
    if np.any(np.abs(r**2 + _norm(mu) ** 2 - 1) > TOL):
        raise ChartError("(r, mu) must be a unit vector")
    return z, np.concatenate([r[..., None], mu], axis=-1)


def sphere_blow_down(z, r, mu):
    """Blow-down of the octant along {0} x S^{n'}_{k'} in polar data: (r z, mu)."""
    z = np.asarray(z, dtype=float)
    r = np.asarray(r, dtype=float)
    return np.concatenate([r[..., None] * z, np.asarray(mu, dtype=float)], axis=-1)


# -- the local model M = R^m_{km} x R^p_{kp}, P = {0} x R^p, Q = {0} ----------


def zeta(x, y, t):
    """(x, y, t) -> (x, t y), from [[M:Q]:[P:Q]] to [M:P]."""
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ChartError("t must be non-negative")
    return np.asarray(x, dtype=float), t[..., None] * np.asarray(y, dtype=float)


def beta_mp(x, s):
    """Blow-down of [M:P] = S^{m-1} x R^{p+1}_{kp+1}: (x, (s_1, s~)) -> (s_1 x, s~)."""
    x = np.asarray(x, dtype=float)
    s = np.asarray(s, dtype=float)
    return np.concatenate([s[..., :1] * x, s[..., 1:]], axis=-1)


def beta_mq(w, t):
    """Blow-down of [M:Q] = S^{m+p-1} x [0, inf): (w, t) -> t w."""
    t = np.asarray(t, dtype=float)
    return t[..., None] * np.asarray(w, dtype=float)


def upsilon_times_id(x, y, t):
    """Blow-down of [[M:Q]:[P:Q]] onto [M:Q] in product coordinates."""
    return upsilon(x, y), np.asarray(t, dtype=float)


def b_map(x, y, t):
    """(x, y, t) -> (x, t y, (y_1 x, y~), t)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    t = np.asarray(t, dtype=float)
    _, ty = zeta(x, y, t)
    return x, ty, upsilon(x, y), t


def b_left_inverse(x, z, w, t):
    """(x, z, (w_1, w_2), t) -> (x, (|w_1|, w_2), t), where w_1 has the length of x."""
    x = np.asarray(x, dtype=float)
    w = np.asarray(w, dtype=float)
    m = x.shape[-1]
    w1, w2 = w[..., :m], w[..., m:]
    return x, np.concatenate([_norm(w1)[..., None], w2], axis=-1), np.asarray(t, dtype=float)


# -- sampling ------------------------------------------------------------------


def sample_octant(rng: np.random.Generator, n: int, k: int, size: int) -> np.ndarray:
    """Uniform samples of S^{n-1}_k as a (size, n) array."""
    v = rng.standard_normal((size, n))
    v[:, :k] = np.abs(v[:, :k])
    return v / _norm(v)[:, None]


def sample_pair_octant(rng, n: int, n2: int, k: int, k2: int, size: int, eps: float = 0.0):
    """Samples of S^{n+n'} in R^n_k x R^{n'+1}_{k'}, returned as (eta, mu) with |eta| > eps."""
    out_eta, out_mu, have = [], [], 0
    while have < size:
        v = rng.standard_normal((2 * size, n + n2 + 1))
        v[:, :k] = np.abs(v[:, :k])
        v[:, n : n + k2] = np.abs(v[:, n : n + k2])
        v /= _norm(v)[:, None]
        keep = _norm(v[:, :n]) > eps
        out_eta.append(v[keep, :n])
        out_mu.append(v[keep, n:])
        have += int(keep.sum())
    return np.concatenate(out_eta)[:size], np.concatenate(out_mu)[:size]
