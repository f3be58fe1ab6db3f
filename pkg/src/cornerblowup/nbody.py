"""The N-body semilattice: particles pinned to the origin or colliding pairwise."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .linalg import Matrix, Subspace, as_fraction
from .semilattice import Semilattice, axes_lattice, chain_lattice, close, three_lines_lattice

DEFAULT_CAP = 24


@dataclass(frozen=True)
class NBodySpec:
    N: int
    d: int
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        if self.N < 2:
            raise ValueError("need at least two particles")
        if self.d < 1:
            raise ValueError("spatial dimension must be positive")
        if self.N * self.d > self.cap:
            raise ValueError(f"ambient dimension {self.N * self.d} exceeds the cap {self.cap}")

    @property
    def ambient(self) -> int:
        return self.N * self.d

    @classmethod
    def parse(cls, text: str) -> "NBodySpec":
        """Read ``"N=3,d=1"``."""
        fields = dict(part.split("=") for part in text.replace(" ", "").split(",") if part)
        return cls(int(fields["N"]), int(fields["d"]))


def _row(n: int, entries: dict[int, int]) -> list[int]:
    r = [0] * n
    for i, v in entries.items():
        r[i] = v
    return r


def pinned(spec: NBodySpec, j: int) -> Subspace:
    """Y_j: particle j (0-based) sits at the origin."""
    n, d = spec.ambient, spec.d
    return Subspace.kernel([_row(n, {j * d + a: 1}) for a in range(d)], n)


def collision(spec: NBodySpec, i: int, j: int) -> Subspace:
    """Y_ij: particles i and j coincide."""
    n, d = spec.ambient, spec.d
    return Subspace.kernel([_row(n, {i * d + a: 1, j * d + a: -1}) for a in range(d)], n)


def generators(spec: NBodySpec) -> list[Subspace]:
    gens = [pinned(spec, j) for j in range(spec.N)]
    gens += [collision(spec, i, j) for i, j in itertools.combinations(range(spec.N), 2)]
    return gens


def nbody_semilattice(spec: NBodySpec) -> Semilattice:
    return close(generators(spec), spec.ambient)


def symmetry_action(spec: NBodySpec, permutation: Sequence[int] | None = None, orthogonal=None) -> Matrix:
    """Block matrix of a particle permutation or of g in O(d) acting on every particle.

    ``permutation[i]`` is where particle i is sent.  An orthogonal block may
    be given with float entries; it is checked to 1e-12 and then used with
    its exact binary value.
    """
    n, d = spec.ambient, spec.d
    if (permutation is None) == (orthogonal is None):
        raise ValueError("give exactly one of permutation or orthogonal")
    m = [[Fraction(0)] * n for _ in range(n)]
    if permutation is not None:
        if sorted(permutation) != list(range(spec.N)):
            raise ValueError("not a permutation of the particles")
        for i, target in enumerate(permutation):
            for a in range(d):
                m[target * d + a][i * d + a] = Fraction(1)
    else:
        g = [[as_fraction(x) for x in row] for row in orthogonal]
        if len(g) != d or any(len(r) != d for r in g):
            raise ValueError(f"orthogonal block must be {d}x{d}")
        gf = np.array([[float(x) for x in r] for r in g])
        if np.max(np.abs(gf.T @ gf - np.eye(d))) > 1e-12:
            raise ValueError("block is not orthogonal")
        for p in range(spec.N):
            for a in range(d):
                for b in range(d):
                    m[p * d + a][p * d + b] = g[a][b]
    return tuple(tuple(r) for r in m)


def builtin_lattices() -> dict[str, Semilattice]:
    """The named families the harnesses run on."""
    out = {
        "axes": axes_lattice(),
        "chain": chain_lattice(),
        "antichain": three_lines_lattice(),
    }
    for N in (2, 3):
        for d in (1, 2, 3):
            out[f"nbody-N{N}-d{d}"] = nbody_semilattice(NBodySpec(N, d))
    return out
