"""Projective resolutions of a single group placed in degree 0.

Over the integers projective means free, and a subgroup of a free group is
free, so the classical resolution has length one:

    0 -> Z^r --H--> Z^n -> X -> 0

with H a Hermite basis of the relation lattice. Stretching it with R_N
gives a resolution for (a, b) homology on N-complexes, N = a + b.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .complexes import (
    NComplex,
    SeqMorphism,
    Sequence,
    _build,
    power_differential,
    r_n_expand,
    validate_ncomplex,
)
from .groups import GroupMorphism, PresentedGroup
from .homology import quasi_iso_report
from .intmat import IntMatrix, hermite_basis, smith_normal_form, unimodular_inverse


def is_projective(X: PresentedGroup) -> bool:
    """Projective = free for finitely generated abelian groups."""
    return not X.invariants[1]


def group_at_zero(X: PresentedGroup) -> NComplex:
    """X concentrated in degree 0."""
    return NComplex(0, 0, (X,), (), 1)


def classical_resolution(X: PresentedGroup) -> NComplex:
    """Free 2-complex on [-1, 0] whose only homology is X at degree 0."""
    H = hermite_basis(X.relations)
    P0 = PresentedGroup.free(X.generators)
    P1 = PresentedGroup.free(H.cols)
    return NComplex(-1, 0, (P1, P0), (GroupMorphism(P1, P0, H),), 2)


def free_basis(X: PresentedGroup) -> IntMatrix:
    """Columns forming a basis of a free X, written in its generators."""
    if not is_projective(X):
        raise ValueError("group has torsion")
    U, D, _ = smith_normal_form(X.relations)
    units = sum(1 for i in range(min(D.shape)) if D[i, i] != 0)
    # U X-relations V = D with unit diagonal, so the last n - units columns of U^-1 span X freely
    return unimodular_inverse(U).select_columns(range(units, X.generators))


def augmentation(P: Sequence, X: PresentedGroup) -> SeqMorphism:
    """P -> X at 0: the identity on generators in degree 0, zero elsewhere."""
    if P.obj(0).generators != X.generators:
        raise ValueError("degree-0 term does not have the generators of X")
    target = group_at_zero(X)
    eps = GroupMorphism(P.obj(0), X, IntMatrix.identity(X.generators))
    return _build(P, target, {0: eps})


def max_nonzero_power(C: Sequence) -> int:
    """Largest k with d^k nonzero somewhere (0 if every differential vanishes)."""
    best = 0
    for k in range(1, C.hi - C.lo + 1):
        if any(not power_differential(C, i, k).is_zero() for i in range(C.lo, C.hi - k + 1)):
            best = k
    return best


@dataclass(frozen=True, eq=False)
class ResolutionReport:
    X: PresentedGroup
    a: int
    b: int
    resolution: NComplex
    augmentation: SeqMorphism
    projective: dict[int, bool] = field(repr=False)
    vanishes_above_zero: bool
    quasi_iso: dict[int, bool] = field(repr=False)
    max_nonzero_power: int

    @property
    def ok(self) -> bool:
        return (all(self.projective.values()) and self.vanishes_above_zero
                and all(self.quasi_iso.values()))

    def to_dict(self) -> dict:
        return {
            "group": {"free_rank": self.X.invariants[0],
                      "invariant_factors": list(self.X.invariants[1])},
            "a": self.a, "b": self.b,
            "projective": {str(i): v for i, v in self.projective.items()},
            "vanishes_above_zero": self.vanishes_above_zero,
            "quasi_iso": {str(i): v for i, v in self.quasi_iso.items()},
            "max_nonzero_power": self.max_nonzero_power,
            "ok": self.ok,
        }


def check_resolution(P: Sequence, X: PresentedGroup, a: int, b: int,
                     eps: Optional[SeqMorphism] = None) -> ResolutionReport:
    """Verify a candidate (a, b)-projective resolution P of X."""
    N = a + b
    P = validate_ncomplex(P, N)
    if eps is None:
        eps = augmentation(P, X)
    positions = range(-N - 1, 2)
    return ResolutionReport(
        X=X, a=a, b=b, resolution=P, augmentation=eps,
        projective={i: is_projective(P.obj(i)) for i in range(min(P.lo, 0), 1)},
        vanishes_above_zero=all(P.obj(i).is_trivial() for i in P.positions if i >= 1),
        quasi_iso=quasi_iso_report(eps, a, b, positions),
        max_nonzero_power=max_nonzero_power(P),
    )


def hh_projective_resolution(X: PresentedGroup, a: int, b: int) -> ResolutionReport:
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    N = a + b
    if is_projective(X) and not X.relations.is_zero():
        # a free group with redundant relations: resolve it by itself, through a basis
        B = free_basis(X)
        P0 = PresentedGroup.free(B.cols)
        P = NComplex(0, 0, (P0,), (), N)
        eps = _build(P, group_at_zero(X), {0: GroupMorphism(P0, X, B)})
        return check_resolution(P, X, a, b, eps)
    P = r_n_expand(classical_resolution(X), N)
    return check_resolution(P, X, a, b)


def verify_lower_bound(report: ResolutionReport, a: int, b: int) -> bool:
    """Does the resolution fail to be an (a+b-1)-complex, i.e. is d^(a+b-1) nonzero somewhere?"""
    if is_projective(report.X):
        raise ValueError("lower bound only applies to non-projective groups")
    return report.max_nonzero_power >= a + b - 1
