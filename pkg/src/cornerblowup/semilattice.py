"""Finite intersection-closed families of linear subspaces.

A :class:`Semilattice` stores the subspaces Y themselves; the boundary
sphere of Y in the radial compactification is implied, with the zero
subspace standing for the empty sphere.  Blowing up a minimal member is
tracked combinatorially by :func:`reduce`, which tags each surviving member
as lifted (it contains the centre) or untouched (it misses the centre).
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .linalg import (
    DimensionMismatch,
    Subspace,
    apply_to_subspace,
    as_matrix,
    contains,
    intersect,
    inverse,
    rank,
)


class NotASemilattice(ValueError):
    pass


@dataclass(frozen=True)
class Semilattice:
    ambient: int
    members: tuple[Subspace, ...]

    def __post_init__(self):
        if tuple(sorted(set(self.members))) != self.members:
            raise NotASemilattice("members must be distinct and canonically ordered")
        if any(m.ambient != self.ambient for m in self.members):
            raise DimensionMismatch("member lives in a different ambient space")
        if Subspace.zero(self.ambient) not in self.members:
            raise NotASemilattice("the zero subspace must be a member")
        if any(m.is_whole for m in self.members):
            raise NotASemilattice("the ambient space itself may not be a member")
        present = set(self.members)
        for a, b in itertools.combinations(self.members, 2):
            if intersect(a, b) not in present:
                raise NotASemilattice(f"meet of {a} and {b} is missing")

    def __hash__(self) -> int:
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.ambient, self.members))
            object.__setattr__(self, "_hash", h)
        return h

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Subspace]:
        return iter(self.members)

    def __contains__(self, y) -> bool:
        return y in self.members

    @property
    def zero(self) -> Subspace:
        return self.members[0]

    @property
    def nontrivial(self) -> tuple[Subspace, ...]:
        return self.members[1:]

    def index(self, y: Subspace) -> int:
        return self.members.index(y)

    def to_json(self) -> dict:
        return {"ambient": self.ambient, "members": [m.to_json() for m in self.members]}

    @classmethod
    def from_json(cls, obj: dict) -> "Semilattice":
        n = int(obj["ambient"])
        subs = [Subspace.span(m.get("basis", []), n) for m in obj["members"]]
        return cls(n, tuple(sorted(set(subs))))


def close(generators: Iterable[Subspace], ambient: int | None = None) -> Semilattice:
    """Smallest intersection-closed family containing the generators and {0}."""
    gens = list(generators)
    if ambient is None:
        if not gens:
            raise ValueError("ambient dimension needed when there are no generators")
        ambient = gens[0].ambient
    for g in gens:
        if g.ambient != ambient:
            raise DimensionMismatch("generators live in different ambient spaces")
        if g.is_whole:
            raise NotASemilattice("a generator equals the ambient space")
    found = set(gens) | {Subspace.zero(ambient)}
    frontier = set(found)
    while frontier:
        new = set()
        for a in frontier:
            for b in found:
                c = intersect(a, b)
                if c not in found:
                    new.add(c)
        found |= new
        frontier = new
    return Semilattice(ambient, tuple(sorted(found)))


@dataclass(frozen=True)
class AdmissibleOrdering:
    sequence: tuple[Subspace, ...]

    def is_compatible(self) -> bool:
        for i, j in itertools.combinations(range(len(self.sequence)), 2):
            # j > i, so sequence[j] must not sit strictly inside sequence[i]
            if contains(self.sequence[i], self.sequence[j]):
                return False
        return True

    def to_json(self, lattice: Semilattice) -> list[int]:
        return [lattice.index(y) for y in self.sequence]

    @classmethod
    def from_json(cls, indices: Sequence[int], lattice: Semilattice) -> "AdmissibleOrdering":
        return cls(tuple(lattice.members[i] for i in indices))


def _below(members: Sequence[Subspace]) -> dict[Subspace, set[Subspace]]:
    return {a: {b for b in members if b != a and contains(a, b)} for a in members}


def admissible_orderings(s: Semilattice, limit: int) -> list[AdmissibleOrdering]:
    """Up to ``limit`` linear extensions of inclusion on the nonzero members.

    Enumeration is depth-first taking available members in canonical order,
    so the first ordering returned is the canonical (dimension-increasing) one.
    """
    if limit < 1:
        raise ValueError("limit must be at least 1")
    items = list(s.nontrivial)
    below = _below(items)
    out: list[AdmissibleOrdering] = []

    def extend(prefix: list[Subspace], placed: set[Subspace]):
        if len(out) >= limit:
            return
        if len(prefix) == len(items):
            out.append(AdmissibleOrdering(tuple(prefix)))
            return
        for y in items:
            if y not in placed and below[y] <= placed:
                prefix.append(y)
                placed.add(y)
                extend(prefix, placed)
                placed.discard(y)
                prefix.pop()
                if len(out) >= limit:
                    return

    extend([], set())
    return out


def random_admissible_ordering(s: Semilattice, rng) -> AdmissibleOrdering:
    """A linear extension built by repeatedly picking a random available member."""
    items = list(s.nontrivial)
    below = _below(items)
    placed: list[Subspace] = []
    done: set[Subspace] = set()
    while len(placed) < len(items):
        avail = [y for y in items if y not in done and below[y] <= done]
        y = avail[int(rng.integers(len(avail)))]
        placed.append(y)
        done.add(y)
    return AdmissibleOrdering(tuple(placed))


class Tag(enum.Enum):
    LIFTED = "lifted"
    UNTOUCHED = "untouched"
    EMPTY = "empty"


class NotMinimal(ValueError):
    pass


@dataclass(frozen=True)
class LiftedFamily:
    """The family obtained after blowing up some centres in turn.

    Members keep their original subspace as a label.  ``empties`` holds the
    labels that have become the empty set: {0} and every centre so far.
    Inclusion and meets are those of the labels, with any meet landing in
    ``empties`` counting as empty.
    """

    ambient: int
    alive: tuple[Subspace, ...]
    empties: frozenset[Subspace]
    tags: tuple[tuple[Subspace, Subspace, Tag], ...] = field(default=())

    def __len__(self) -> int:
        # the empty element counts once
        return len(self.alive) + 1

    @classmethod
    def of(cls, s: Semilattice) -> "LiftedFamily":
        return cls(s.ambient, s.nontrivial, frozenset({s.zero}))

    def minimal(self) -> tuple[Subspace, ...]:
        return tuple(y for y in self.alive if not any(z != y and contains(y, z) for z in self.alive))


def reduce(family: Semilattice | LiftedFamily, p: Subspace) -> LiftedFamily:
    """Blow up the minimal member ``p`` and return the lifted family.

    Every other member Q is tagged LIFTED when it contains p and UNTOUCHED
    when its meet with p is already empty; p itself becomes empty, so the
    family shrinks by exactly one element.  The tags of this step are
    appended to ``tags`` as (Q, p, tag) triples.
    """
    if isinstance(family, Semilattice):
        family = LiftedFamily.of(family)
    if p not in family.alive:
        raise NotMinimal(f"{p} is not a nonempty member of the family")
    if p not in family.minimal():
        raise NotMinimal(f"{p} is not minimal")
    empties = family.empties | {p}
    new_tags = [(p, p, Tag.EMPTY)]
    alive = []
    for q in family.alive:
        if q == p:
            continue
        if contains(q, p):
            tag = Tag.LIFTED
        elif intersect(q, p) in family.empties:
            tag = Tag.UNTOUCHED
        else:
            raise NotMinimal(f"{q} neither contains nor misses {p}; the family is not clean")
        alive.append(q)
        new_tags.append((q, p, tag))
    return LiftedFamily(family.ambient, tuple(alive), frozenset(empties), family.tags + tuple(new_tags))


def reduce_along(s: Semilattice, ordering: AdmissibleOrdering) -> list[LiftedFamily]:
    """All intermediate families of the iterated blow-up, starting with s itself."""
    fam = LiftedFamily.of(s)
    steps = [fam]
    for p in ordering.sequence:
        fam = reduce(fam, p)
        steps.append(fam)
    return steps


def is_clean(family: Sequence[Subspace], max_size: int | None = 3) -> bool:
    """Closure under meets plus the tangent identity on sub-families.

    For linear subspaces the tangent space of Y is Y itself, so the tangent
    side is computed independently as n - rank(stacked annihilators) and
    compared against the dimension of the iterated meet.
    """
    members = list(family)
    if not members:
        return True
    n = members[0].ambient
    if any(m.ambient != n for m in members):
        raise DimensionMismatch("family lives in different ambient spaces")
    present = set(members)
    for a, b in itertools.combinations(members, 2):
        if intersect(a, b) not in present:
            return False
    top = len(members) if max_size is None else min(max_size, len(members))
    for size in range(2, top + 1):
        for sub in itertools.combinations(members, size):
            meet = sub[0]
            for y in sub[1:]:
                meet = intersect(meet, y)
            stacked = [row for y in sub for row in y.annihilator]
            if meet.dim != n - rank(stacked, n):
                return False
    return True


class NotInvariant(ValueError):
    pass


def act(s: Semilattice, g, assert_invariant: bool = False) -> Semilattice:
    """Push every member forward by the invertible rational matrix g."""
    g = as_matrix(g)
    if len(g) != s.ambient or any(len(r) != s.ambient for r in g):
        raise DimensionMismatch("matrix size differs from the ambient dimension")
    inverse(g)  # raises on singular g
    moved = Semilattice(s.ambient, tuple(sorted({apply_to_subspace(g, y) for y in s.members})))
    if assert_invariant and moved != s:
        raise NotInvariant("the family is not mapped to itself")
    return moved


def permutation_of(s: Semilattice, g) -> dict[Subspace, Subspace]:
    """Where each member goes under g (for invariant families)."""
    g = as_matrix(g)
    return {y: apply_to_subspace(g, y) for y in s.members}


def chain_lattice() -> Semilattice:
    """{0} inside a line inside a plane, in Q^3."""
    line = Subspace.span([[1, 0, 0]])
    plane = Subspace.span([[1, 0, 0], [0, 1, 0]])
    return close([line, plane])


def axes_lattice() -> Semilattice:
    return close([Subspace.span([[1, 0]]), Subspace.span([[0, 1]])])


def three_lines_lattice() -> Semilattice:
    """Three pairwise transverse lines in Q^2 (an antichain above {0})."""
    return close([Subspace.span([[0, 1]]), Subspace.span([[1, 0]]), Subspace.span([[1, 1]])])
