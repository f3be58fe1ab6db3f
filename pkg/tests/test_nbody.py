import sys
from pathlib import Path

import numpy as np
import pytest

from cornerblowup.linalg import Subspace
from cornerblowup.nbody import (
    NBodySpec,
    collision,
    generators,
    nbody_semilattice,
    pinned,
    symmetry_action,
)
from cornerblowup.semilattice import permutation_of

sys.path.insert(0, str(Path(__file__).parent / "oracles"))
import closure_oracle  # noqa: E402


def test_generators_n2_d1():
    spec = NBodySpec(2, 1)
    assert pinned(spec, 0) == Subspace.span([[0, 1]])
    assert pinned(spec, 1) == Subspace.span([[1, 0]])
    assert collision(spec, 0, 1) == Subspace.span([[1, 1]])


@pytest.mark.parametrize("N,d", [(2, 1), (3, 2), (4, 1)])
def test_pinned_dimension(N, d):
    spec = NBodySpec(N, d)
    assert all(pinned(spec, j).dim == (N - 1) * d for j in range(N))


def test_generator_count():
    assert len(generators(NBodySpec(3, 1))) == 6


def test_spec_validation():
    with pytest.raises(ValueError):
        NBodySpec(1, 1)
    with pytest.raises(ValueError):
        NBodySpec(2, 0)
    with pytest.raises(ValueError):
        NBodySpec(9, 3)
    assert NBodySpec.parse("N=3, d=2") == NBodySpec(3, 2)


@pytest.mark.parametrize("N,d", [(2, 1), (2, 3), (3, 1), (3, 3)])
def test_live_oracle(N, d):
    assert len(nbody_semilattice(NBodySpec(N, d))) == closure_oracle.closure_size(N, d)


def test_symmetry_examples():
    spec = NBodySpec(2, 1)
    f = nbody_semilattice(spec)
    swap = symmetry_action(spec, permutation=[1, 0])
    moved = permutation_of(f, swap)
    assert moved[pinned(spec, 0)] == pinned(spec, 1)
    assert moved[collision(spec, 0, 1)] == collision(spec, 0, 1)
    ident = symmetry_action(spec, permutation=[0, 1])
    assert [list(r) for r in ident] == [[1, 0], [0, 1]]
    minus = symmetry_action(spec, orthogonal=[[-1]])
    assert all(moved == y for y, moved in permutation_of(f, minus).items())


def test_rotation_block():
    spec = NBodySpec(2, 2)
    c, s = np.cos(0.3), np.sin(0.3)
    g = symmetry_action(spec, orthogonal=[[c, -s], [s, c]])
    f = nbody_semilattice(spec)
    assert all(moved == y for y, moved in permutation_of(f, g).items())
    with pytest.raises(ValueError):
        symmetry_action(spec, orthogonal=[[2, 0], [0, 1]])
    with pytest.raises(ValueError):
        symmetry_action(spec, permutation=[0, 0])
