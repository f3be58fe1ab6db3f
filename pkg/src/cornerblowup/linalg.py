"""Exact rational linear algebra for linear subspaces of Q^n.

Subspaces are stored by the reduced row-echelon form of a spanning set, which
makes equality structural.  Floats are only accepted as input, and are
converted exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]


class DimensionMismatch(ValueError):
    pass


def as_fraction(x) -> Fraction:
    """Parse ints, Fractions, ``"p/q"`` strings, decimal strings and floats.

    Floats are converted exactly (binary expansion), never rounded.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, np.generic):
        x = x.item()
    if isinstance(x, (int, float, str)):
        return Fraction(x)
    if isinstance(x, (list, tuple)) and len(x) == 2:
        return Fraction(int(x[0]), int(x[1]))
    raise TypeError(f"cannot read {x!r} as a rational")


def as_vector(v: Iterable) -> Vector:
    return tuple(as_fraction(x) for x in v)


def as_matrix(rows: Iterable[Iterable]) -> Matrix:
    return tuple(as_vector(r) for r in rows)


def format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def rref(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row-echelon form; returns (nonzero rows, pivot columns)."""
    m = [[as_fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m[:r]), tuple(pivots)


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> Matrix:
    """Basis of {v : rows . v = 0}, one vector per free column."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return tuple(basis)


def rank(rows: Sequence[Sequence[Fraction]], ncols: int) -> int:
    return len(rref(rows, ncols)[0])


def matvec(m: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    nz = [(i, x) for i, x in enumerate(v) if x]
    return tuple(sum((row[i] * x for i, x in nz if row[i]), Fraction(0)) for row in m)


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols) for row in a)


def transpose(m: Sequence[Sequence[Fraction]]) -> Matrix:
    return tuple(zip(*m))


def solve_left(target: Sequence[Sequence[Fraction]], m: Sequence[Sequence[Fraction]]) -> Matrix | None:
    """Find R with R . m == target exactly, or None when no such R exists.

    ``m`` must have independent rows (true for every QuotientMap matrix).
    """
    ncols = len(m[0]) if m else 0
    k = len(m)
    # R m = T  <=>  m^T R^T = T^T ; solve column by column via an augmented RREF
    mt = transpose(m)
    rows_out = []
    for trow in target:
        aug = [tuple(mt[i]) + (trow[i],) for i in range(ncols)]
        red, pivots = rref(aug, k + 1)
        if k in pivots:
            return None
        x = [Fraction(0)] * k
        for row, p in zip(red, pivots):
            x[p] = row[k]
        rows_out.append(tuple(x))
    return tuple(rows_out)


def inverse(m: Sequence[Sequence[Fraction]]) -> Matrix:
    n = len(m)
    aug = [tuple(row) + tuple(Fraction(int(i == j)) for j in range(n)) for i, row in enumerate(m)]
    red, pivots = rref(aug, 2 * n)
    if tuple(pivots[:n]) != tuple(range(n)) or len(red) < n:
        raise ValueError("matrix is singular")
    return tuple(row[n:] for row in red)


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^n held in canonical RREF basis form."""

    ambient: int
    basis: Matrix

    def __post_init__(self):
        if self.ambient < 1:
            raise ValueError("ambient dimension must be positive")
        red, _ = rref(self.basis, self.ambient)
        if red != self.basis:
            raise ValueError("basis is not in reduced row-echelon form; use Subspace.span")

    @classmethod
    def span(cls, vectors: Iterable[Iterable], ambient: int | None = None) -> "Subspace":
        rows = [as_vector(v) for v in vectors]
        if ambient is None:
            if not rows:
                raise ValueError("ambient dimension needed for an empty spanning set")
            ambient = len(rows[0])
        if any(len(r) != ambient for r in rows):
            raise DimensionMismatch("spanning vectors have the wrong length")
        red, _ = rref(rows, ambient)
        return cls(ambient, red)

    @classmethod
    def kernel(cls, equations: Iterable[Iterable], ambient: int) -> "Subspace":
        """The solution space of a homogeneous system."""
        return cls.span(nullspace([as_vector(e) for e in equations], ambient), ambient)

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient, ())

    @classmethod
    def whole(cls, ambient: int) -> "Subspace":
        return cls.span([[int(i == j) for j in range(ambient)] for i in range(ambient)], ambient)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_zero(self) -> bool:
        return not self.basis

    @property
    def is_whole(self) -> bool:
        return self.dim == self.ambient

    @cached_property
    def annihilator(self) -> Matrix:
        """Rows spanning the orthogonal complement; their kernel is ``self``."""
        return rref(nullspace(self.basis, self.ambient), self.ambient)[0]

    @cached_property
    def _pivots(self) -> tuple[int, ...]:
        return rref(self.basis, self.ambient)[1]

    def coordinates(self, v: Sequence) -> Vector | None:
        """Coefficients of ``v`` in the RREF basis, or None if v is not in the span."""
        v = as_vector(v)
        coeffs = tuple(v[p] for p in self._pivots)
        recon = [sum((c * row[j] for c, row in zip(coeffs, self.basis)), Fraction(0)) for j in range(self.ambient)]
        return coeffs if tuple(recon) == v else None

    def contains_vector(self, v: Sequence) -> bool:
        if len(v) != self.ambient:
            raise DimensionMismatch("vector length differs from ambient dimension")
        return not any(matvec(self.annihilator, as_vector(v)))

    def __hash__(self) -> int:
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.ambient, self.basis))
            object.__setattr__(self, "_hash", h)
        return h

    def sort_key(self):
        return (self.dim, self.basis)

    def __lt__(self, other: "Subspace") -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        rows = ", ".join("(" + ", ".join(format_fraction(x) for x in r) + ")" for r in self.basis)
        return f"Subspace({self.ambient}, [{rows}])"

    def to_json(self) -> dict:
        return {"ambient": self.ambient, "basis": [[format_fraction(x) for x in r] for r in self.basis]}

    @classmethod
    def from_json(cls, obj: dict) -> "Subspace":
        return cls.span(obj.get("basis", []), int(obj["ambient"]))


def _check(a: Subspace, b: Subspace) -> None:
    if a.ambient != b.ambient:
        raise DimensionMismatch(f"ambient dimensions {a.ambient} and {b.ambient} differ")


def intersect(a: Subspace, b: Subspace) -> Subspace:
    _check(a, b)
    return _intersect(a, b)


@lru_cache(maxsize=1 << 16)
def _intersect(a: Subspace, b: Subspace) -> Subspace:
    return Subspace.kernel(a.annihilator + b.annihilator, a.ambient)


def add(a: Subspace, b: Subspace) -> Subspace:
    _check(a, b)
    return Subspace.span(a.basis + b.basis, a.ambient)


def contains(a: Subspace, b: Subspace) -> bool:
    """True iff b is a subspace of a."""
    _check(a, b)
    return _contains(a, b)


@lru_cache(maxsize=1 << 16)
def _contains(a: Subspace, b: Subspace) -> bool:
    return all(a.coordinates(v) is not None for v in b.basis)


@lru_cache(maxsize=None)
def orthogonal_complement(y: Subspace) -> Subspace:
    return Subspace(y.ambient, y.annihilator)


@lru_cache(maxsize=None)
def projector(y: Subspace) -> Matrix:
    """Exact orthogonal projector onto y: B^T (B B^T)^{-1} B for any basis B."""
    n = y.ambient
    if y.is_zero:
        return tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(n))
    b = y.basis
    gram_inv = inverse(matmul(b, transpose(b)))
    return matmul(transpose(b), matmul(gram_inv, b))


@dataclass(frozen=True)
class QuotientMap:
    """The surjection X -> X/Y written in a fixed basis of the orthogonal complement of Y."""

    source: int
    kernel: Subspace
    matrix: Matrix

    @property
    def target_dim(self) -> int:
        return len(self.matrix)

    def __call__(self, v: Sequence) -> Vector:
        return matvec(self.matrix, as_vector(v))

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "kernel": self.kernel.to_json(),
            "matrix": [[format_fraction(x) for x in r] for r in self.matrix],
        }


def quotient_map(x_dim: int, y: Subspace) -> QuotientMap:
    if y.ambient != x_dim:
        raise DimensionMismatch("subspace does not live in the given ambient space")
    if y.dim >= x_dim:
        raise ValueError("cannot form the quotient by the whole space")
    return QuotientMap(x_dim, y, y.annihilator)


def factor_through(small: QuotientMap, big: QuotientMap) -> Matrix:
    """R with big.matrix == R . small.matrix, for kernels small.kernel <= big.kernel."""
    r = solve_left(big.matrix, small.matrix)
    if r is None:
        raise ValueError("kernel of the first quotient is not contained in the second")
    return r


def apply_to_subspace(g: Sequence[Sequence[Fraction]], y: Subspace) -> Subspace:
    return Subspace.span([matvec(g, v) for v in y.basis], y.ambient)
