"""Finitely presented abelian groups, their morphisms and subgroups.

A group is the cokernel of an integer relation matrix: ``Z^n / R Z^r``.
Elements are integer vectors of length ``n`` taken modulo the columns of
``R``. Subgroups are generator matrices whose columns are elements of the
ambient group; comparisons between subgroups are always semantic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import prod
from typing import Optional, Sequence

from .intmat import (
    ColumnEchelon,
    IntMatrix,
    block_diag,
    hermite_basis,
    hstack,
    smith_diagonal,
)


class IllDefinedMorphismError(ValueError):
    """A matrix does not send relations of the source to relations of the target."""


class NotInducedError(ValueError):
    """A map does not carry one subquotient into another."""


@dataclass(frozen=True)
class PresentedGroup:
    generators: int
    relations: IntMatrix

    def __post_init__(self):
        if self.relations.rows != self.generators:
            raise ValueError(
                f"relation matrix has {self.relations.rows} rows for {self.generators} generators")

    @classmethod
    def zero(cls) -> "PresentedGroup":
        return cls(0, IntMatrix.zeros(0, 0))

    @classmethod
    def free(cls, n: int) -> "PresentedGroup":
        return cls(n, IntMatrix.zeros(n, 0))

    @classmethod
    def cyclic(cls, m: int) -> "PresentedGroup":
        """Z/m on one generator; m = 0 gives Z."""
        if m == 0:
            return cls.free(1)
        return cls(1, IntMatrix.from_rows([[m]]))

    @classmethod
    def from_invariants(cls, free_rank: int, factors: Sequence[int] = ()) -> "PresentedGroup":
        """Z^free_rank + Z/f_1 + ... on diagonal relations, torsion first."""
        factors = [abs(int(f)) for f in factors if abs(int(f)) != 1]
        n = len(factors) + free_rank
        cols = [[f if i == k else 0 for i in range(n)] for k, f in enumerate(factors) if f]
        return cls(n, IntMatrix.from_columns(cols, n))

    @cached_property
    def _echelon(self) -> ColumnEchelon:
        return ColumnEchelon(self.relations)

    def is_zero_element(self, v: Sequence[int]) -> bool:
        return self._echelon.solve(v) is not None

    @cached_property
    def invariants(self) -> tuple[int, tuple[int, ...]]:
        return canonical_invariants(self)

    @property
    def order(self) -> Optional[int]:
        """Number of elements, or None for an infinite group."""
        rank, factors = self.invariants
        return None if rank else prod(factors)

    def is_trivial(self) -> bool:
        return self.invariants == (0, ())

    def is_isomorphic(self, other: "PresentedGroup") -> bool:
        return self.invariants == other.invariants

    def describe(self) -> str:
        return describe_invariants(*self.invariants)


def describe_invariants(free_rank: int, factors: Sequence[int]) -> str:
    parts = ["Z"] * free_rank + [f"Z/{f}" for f in factors]
    return " + ".join(parts) if parts else "0"


def canonical_invariants(G: PresentedGroup) -> tuple[int, tuple[int, ...]]:
    """(free rank, invariant factors > 1 in divisibility order) of G."""
    diag = smith_diagonal(G.relations)
    nonzero = [d for d in diag if d]
    return G.generators - len(nonzero), tuple(d for d in nonzero if d > 1)


def direct_sum(*groups: PresentedGroup) -> PresentedGroup:
    if not groups:
        return PresentedGroup.zero()
    return PresentedGroup(sum(g.generators for g in groups),
                          block_diag(*(g.relations for g in groups)))


@dataclass(frozen=True, eq=False)
class GroupMorphism:
    """A homomorphism given on generators: ``matrix`` is target.generators x source.generators.

    Equality is semantic: two morphisms between the same groups are equal
    when their matrices agree modulo the target relations.
    """

    source: PresentedGroup
    target: PresentedGroup
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.generators, self.source.generators):
            raise ValueError(
                f"matrix shape {self.matrix.shape} does not match "
                f"{self.target.generators}x{self.source.generators}")

    @classmethod
    def identity(cls, G: PresentedGroup) -> "GroupMorphism":
        return cls(G, G, IntMatrix.identity(G.generators))

    @classmethod
    def zero(cls, source: PresentedGroup, target: PresentedGroup) -> "GroupMorphism":
        return cls(source, target, IntMatrix.zeros(target.generators, source.generators))

    def __call__(self, v: Sequence[int]) -> tuple[int, ...]:
        return self.matrix.apply(v)

    def __matmul__(self, other: "GroupMorphism") -> "GroupMorphism":
        """Composition ``self o other``."""
        if other.target != self.source:
            raise ValueError("composition of non-composable morphisms")
        return GroupMorphism(other.source, self.target, self.matrix @ other.matrix)

    def _check_parallel(self, other: "GroupMorphism") -> None:
        if self.source != other.source or self.target != other.target:
            raise ValueError("morphisms do not share source and target")

    def __add__(self, other: "GroupMorphism") -> "GroupMorphism":
        self._check_parallel(other)
        return GroupMorphism(self.source, self.target, self.matrix + other.matrix)

    def __sub__(self, other: "GroupMorphism") -> "GroupMorphism":
        self._check_parallel(other)
        return GroupMorphism(self.source, self.target, self.matrix - other.matrix)

    def __mul__(self, c: int) -> "GroupMorphism":
        return GroupMorphism(self.source, self.target, self.matrix * c)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(self.target.is_zero_element(c) for c in self.matrix.columns())

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupMorphism):
            return NotImplemented
        if self.source != other.source or self.target != other.target:
            return False
        return (self - other).is_zero()

    def __hash__(self) -> int:
        return hash((self.source, self.target))

    def is_injective(self) -> bool:
        return all(self.source.is_zero_element(c) for c in kernel(self).gens.columns())

    def is_surjective(self) -> bool:
        ech = ColumnEchelon(hstack(self.matrix, self.target.relations))
        n = self.target.generators
        return all(ech.solve([int(i == k) for i in range(n)]) is not None for k in range(n))

    def is_isomorphism(self) -> bool:
        return self.is_surjective() and self.is_injective()


def check_morphism(m: GroupMorphism) -> bool:
    """True iff the matrix maps every source relation into the target relations."""
    return all(m.target.is_zero_element(c) for c in (m.matrix @ m.source.relations).columns())


def block_morphism(sources: Sequence[PresentedGroup], targets: Sequence[PresentedGroup],
                   blocks: dict[tuple[int, int], GroupMorphism]) -> GroupMorphism:
    """Morphism between direct sums from its (target index, source index) blocks."""
    src, tgt = direct_sum(*sources), direct_sum(*targets)
    rows = [[0] * src.generators for _ in range(tgt.generators)]
    r_off = [sum(t.generators for t in targets[:i]) for i in range(len(targets))]
    c_off = [sum(s.generators for s in sources[:j]) for j in range(len(sources))]
    for (i, j), f in blocks.items():
        if f.source != sources[j] or f.target != targets[i]:
            raise ValueError(f"block ({i}, {j}) has the wrong source or target")
        for a in range(f.matrix.rows):
            for b in range(f.matrix.cols):
                rows[r_off[i] + a][c_off[j] + b] += f.matrix[a, b]
    return GroupMorphism(src, tgt, IntMatrix.from_rows(rows, src.generators))


# -- subgroups ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Subgroup:
    """The subgroup of ``ambient`` generated by the columns of ``gens``."""

    ambient: PresentedGroup
    gens: IntMatrix

    def __post_init__(self):
        if self.gens.rows != self.ambient.generators:
            raise ValueError("generator columns do not live in the ambient group")

    @classmethod
    def of(cls, ambient: PresentedGroup, gens: IntMatrix) -> "Subgroup":
        """Build with a reduced (Hermite) generating set."""
        return cls(ambient, hermite_basis(gens))

    @classmethod
    def whole(cls, G: PresentedGroup) -> "Subgroup":
        return cls(G, IntMatrix.identity(G.generators))

    @classmethod
    def trivial(cls, G: PresentedGroup) -> "Subgroup":
        return cls(G, IntMatrix.zeros(G.generators, 0))

    @cached_property
    def _echelon(self) -> ColumnEchelon:
        return ColumnEchelon(hstack(self.gens, self.ambient.relations))

    def __contains__(self, v: Sequence[int]) -> bool:
        return self._echelon.solve(v) is not None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.ambient == other.ambient and contains(self, other) and contains(other, self)

    def __hash__(self) -> int:
        return hash(self.ambient)

    def as_group(self) -> PresentedGroup:
        return subquotient(self, Subgroup.trivial(self.ambient)).quotient

    @property
    def order(self) -> Optional[int]:
        return self.as_group().order

    def is_trivial(self) -> bool:
        return all(self.ambient.is_zero_element(c) for c in self.gens.columns())


def _same_ambient(S1: Subgroup, S2: Subgroup) -> None:
    if S1.ambient != S2.ambient:
        raise ValueError("subgroups live in different ambient groups")


def kernel(f: GroupMorphism) -> Subgroup:
    """Elements x of the source with f(x) = 0 in the target."""
    s = f.source.generators
    K = ColumnEchelon(hstack(f.matrix, f.target.relations)).kernel_basis()
    return Subgroup.of(f.source, K.select_rows(range(s)))


def image(f: GroupMorphism) -> Subgroup:
    return Subgroup.of(f.target, f.matrix)


def subgroup_sum(S1: Subgroup, S2: Subgroup) -> Subgroup:
    _same_ambient(S1, S2)
    return Subgroup.of(S1.ambient, hstack(S1.gens, S2.gens))


def subgroup_intersection(S1: Subgroup, S2: Subgroup) -> Subgroup:
    _same_ambient(S1, S2)
    k = S1.gens.cols
    K = ColumnEchelon(hstack(S1.gens, S2.gens, S1.ambient.relations)).kernel_basis()
    return Subgroup.of(S1.ambient, S1.gens @ K.select_rows(range(k)))


def contains(S1: Subgroup, S2: Subgroup) -> bool:
    """True iff S2 is a subgroup of S1."""
    _same_ambient(S1, S2)
    return all(c in S1 for c in S2.gens.columns())


@dataclass(frozen=True, eq=False)
class Subquotient:
    """K / I inside a common ambient group, re-presented on K's generators.

    ``quotient`` generator i is the class of column i of ``lift``.
    """

    ambient: PresentedGroup
    K: Subgroup
    I: Subgroup
    quotient: PresentedGroup
    lift: IntMatrix = field(repr=False)

    def coordinates(self, v: Sequence[int]) -> tuple[int, ...]:
        """Write an element of K in the quotient's generators."""
        x = self.K._echelon.solve(v)
        if x is None:
            raise NotInducedError("element does not lie in the numerator subgroup")
        return x[:self.K.gens.cols]

    @property
    def invariants(self) -> tuple[int, tuple[int, ...]]:
        return self.quotient.invariants


def subquotient(K: Subgroup, I: Subgroup) -> Subquotient:
    _same_ambient(K, I)
    if not contains(K, I):
        raise ValueError("denominator is not contained in numerator")
    k = K.gens.cols
    rel = ColumnEchelon(hstack(K.gens, I.gens, K.ambient.relations)).kernel_basis()
    quotient = PresentedGroup(k, hermite_basis(rel.select_rows(range(k))))
    return Subquotient(K.ambient, K, I, quotient, K.gens)


def induced_map(f: GroupMorphism, src: Subquotient, tgt: Subquotient) -> GroupMorphism:
    """The map [x] -> [f(x)] from src.K/src.I to tgt.K/tgt.I."""
    if f.source != src.ambient or f.target != tgt.ambient:
        raise NotInducedError("map does not connect the ambient groups")
    fK = f.matrix @ src.K.gens
    fI = f.matrix @ src.I.gens
    if not all(c in tgt.K for c in fK.columns()):
        raise NotInducedError("map not induced: f(K) is not inside the target numerator")
    if not all(c in tgt.I for c in fI.columns()):
        raise NotInducedError("map not induced: f(I) is not inside the target denominator")
    cols = [tgt.coordinates(c) for c in fK.columns()]
    return GroupMorphism(src.quotient, tgt.quotient,
                         IntMatrix.from_columns(cols, tgt.quotient.generators))
