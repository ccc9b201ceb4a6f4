"""Homology of sequences and N-complexes.

On an arbitrary sequence the (a, b) homology at j is

    ker d^a / (ker d^a  intersect  im d^b)

and on an N-complex with a + b >= N the intersection is skipped because
im d^b already sits inside ker d^a.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .complexes import (
    NComplex,
    SeqMorphism,
    Sequence,
    _union,
    is_ncomplex,
    kernel_truncate,
    power_differential,
    s_functor,
    translate,
    zero_sequence,
)
from .groups import (
    GroupMorphism,
    NotInducedError,
    PresentedGroup,
    Subgroup,
    Subquotient,
    block_morphism,
    contains,
    describe_invariants,
    direct_sum,
    image,
    induced_map,
    kernel,
    subgroup_intersection,
    subgroup_sum,
    subquotient,
)


class TotalHomologyError(RuntimeError):
    """The assembled total homology failed its d^(N-1) = 0 certification."""


@dataclass(frozen=True)
class HomologyQuery:
    a: int
    b: int
    j: int

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise ValueError(f"homology needs a, b >= 1 (got a={self.a}, b={self.b})")


@dataclass(frozen=True, eq=False)
class HomologyValue:
    query: HomologyQuery
    subquotient: Subquotient
    interior: bool
    kapranov: bool

    @property
    def group(self) -> PresentedGroup:
        return self.subquotient.quotient

    @property
    def invariants(self) -> tuple[int, tuple[int, ...]]:
        return self.subquotient.quotient.invariants

    def describe(self) -> str:
        return describe_invariants(*self.invariants)


def is_interior(C: Sequence, a: int, b: int, j: int) -> bool:
    return C.lo <= j - b and j + a <= C.hi


def uses_kapranov_form(C: Sequence, a: int, b: int) -> bool:
    return isinstance(C, NComplex) and a + b >= C.n


def homology(C: Sequence, q: HomologyQuery) -> HomologyValue:
    key = ("H", q.a, q.b, q.j)
    if key in C._cache:
        return C._cache[key]
    a, b, j = q.a, q.b, q.j
    K = kernel(power_differential(C, j, a))
    im = image(power_differential(C, j - b, b))
    kapranov = uses_kapranov_form(C, a, b)
    if kapranov:
        if not contains(K, im):
            raise RuntimeError(f"im d^{b} not inside ker d^{a} at {j} on a certified complex")
        I = im
    else:
        I = subgroup_intersection(K, im)
    value = HomologyValue(q, subquotient(K, I), is_interior(C, a, b, j), kapranov)
    C._cache[key] = value
    return value


def homology_induced(f: SeqMorphism, q: HomologyQuery) -> GroupMorphism:
    src, tgt = homology(f.source, q), homology(f.target, q)
    try:
        return induced_map(f.component(q.j), src.subquotient, tgt.subquotient)
    except NotInducedError as exc:
        raise RuntimeError(f"sequence morphism does not induce a map on homology at {q}") from exc


def factorization_check(C: NComplex, q: HomologyQuery) -> bool:
    """Compare H^(a,b)_j(C) with H^(1,1)_0 of the folded, translated complex."""
    if q.a + q.b < C.n:
        raise ValueError("factorization needs a + b >= N")
    lhs = homology(C, q)
    S = s_functor(translate(C, q.j), q.a, q.b)
    rhs = homology(S, HomologyQuery(1, 1, 0))
    if lhs.invariants != rhs.invariants:
        return False
    # both sides are subquotients of C_j, so the identity of C_j must induce an isomorphism
    if S.obj(0) != C.obj(q.j):
        return False
    ident = GroupMorphism.identity(C.obj(q.j))
    return (induced_map(ident, lhs.subquotient, rhs.subquotient).is_isomorphism()
            and induced_map(ident, rhs.subquotient, lhs.subquotient).is_isomorphism())


def homology_sequence(C: NComplex, a: int, b: int) -> Sequence:
    """Position j holds H^(a,b)_j; the differential is [x] -> [dx]."""
    if a + b < C.n:
        raise ValueError("homology sequence needs a + b >= N")
    if C.hi < C.lo:
        return zero_sequence()
    vals = [homology(C, HomologyQuery(a, b, j)) for j in C.positions]
    diffs = [induced_map(C.diff(j), vals[k].subquotient, vals[k + 1].subquotient)
             for k, j in enumerate(C.positions[:-1])]
    return Sequence(C.lo, C.hi, tuple(v.group for v in vals), tuple(diffs))


def _kapranov(C: NComplex, p: int, j: int) -> HomologyValue:
    return homology(C, HomologyQuery(p, C.n - p, j))


def i_star(C: NComplex, p: int, j: int) -> GroupMorphism:
    """H^(p,N-p)_j -> H^(p+1,N-p-1)_j induced by the identity."""
    if not 1 <= p <= C.n - 2:
        raise ValueError(f"i_* needs 1 <= p <= N-2 (p={p}, N={C.n})")
    return induced_map(GroupMorphism.identity(C.obj(j)),
                       _kapranov(C, p, j).subquotient, _kapranov(C, p + 1, j).subquotient)


def d_star(C: NComplex, p: int, j: int) -> GroupMorphism:
    """H^(p,N-p)_j -> H^(p-1,N-p+1)_{j+1} induced by d."""
    if not 2 <= p <= C.n - 1:
        raise ValueError(f"d_* needs 2 <= p <= N-1 (p={p}, N={C.n})")
    return induced_map(C.diff(j), _kapranov(C, p, j).subquotient,
                       _kapranov(C, p - 1, j + 1).subquotient)


def bisequence_square_commutes(C: NComplex, p: int, j: int) -> bool:
    """d_*(p+1, j) o i_*(p, j) == i_*(p-1, j+1) o d_*(p, j), for 2 <= p <= N-2."""
    return d_star(C, p + 1, j) @ i_star(C, p, j) == i_star(C, p - 1, j + 1) @ d_star(C, p, j)


@dataclass(frozen=True, eq=False)
class TotalHomology:
    complex: NComplex
    labels: dict[int, tuple[tuple[int, int], ...]] = field(repr=False)

    def summary(self) -> list[dict]:
        out = []
        for n in self.complex.positions:
            G = self.complex.obj(n)
            rank, factors = G.invariants
            out.append({"n": n, "free_rank": rank, "invariant_factors": list(factors),
                        "components": [{"p": p, "j": j} for p, j in self.labels[n]]})
        return out


def total_homology(C: NComplex, interior: bool = True) -> TotalHomology:
    """Sum of H^(p,N-p)_j over 2j + p = n, with differential the plain sum of i_* and d_*.

    With ``interior`` only components whose position j is interior for (p, N-p)
    are summed; otherwise every j in the window contributes (exact for
    complexes that really are zero outside their window).
    """
    N = C.n
    if N < 2:
        raise ValueError("total homology needs N >= 2")

    def keep(p: int, j: int) -> bool:
        if interior:
            return is_interior(C, p, N - p, j)
        return C.in_window(j)

    comps = [(p, j) for p in range(1, N) for j in C.positions if keep(p, j)]
    if not comps:
        return TotalHomology(NComplex(0, -1, (), (), N - 1), {})
    lo = min(2 * j + p for p, j in comps)
    hi = max(2 * j + p for p, j in comps)
    labels = {}
    for n in range(lo, hi + 1):
        labels[n] = tuple((p, j) for p, j in comps if 2 * j + p == n)
    groups = {n: [_kapranov(C, p, j).group for p, j in labels[n]] for n in labels}
    objects = tuple(direct_sum(*groups[n]) for n in range(lo, hi + 1))
    diffs = []
    for n in range(lo, hi):
        src, tgt = labels[n], labels[n + 1]
        where = {pj: k for k, pj in enumerate(tgt)}
        blocks = {}
        for s, (p, j) in enumerate(src):
            if p + 1 <= N - 1 and (p + 1, j) in where:
                blocks[(where[(p + 1, j)], s)] = i_star(C, p, j)
            if p >= 2 and (p - 1, j + 1) in where:
                blocks[(where[(p - 1, j + 1)], s)] = d_star(C, p, j)
        diffs.append(block_morphism(groups[n], groups[n + 1], blocks))
    seq = Sequence(lo, hi, objects, tuple(diffs))
    bad = is_ncomplex(seq, N - 1)
    if bad is not None:
        raise TotalHomologyError(
            f"unsigned total differential has d^{N - 1} != 0 at position {bad}; "
            "the sign convention of the construction may differ")
    return TotalHomology(NComplex(lo, hi, objects, tuple(diffs), N - 1), labels)


def quasi_iso_report(f: SeqMorphism, a: int, b: int,
                     positions: Optional[Iterable[int]] = None) -> dict[int, bool]:
    if positions is None:
        lo, hi = _union(f.source, f.target)
        positions = range(lo, hi + 1)
    return {j: homology_induced(f, HomologyQuery(a, b, j)).is_isomorphism() for j in positions}


def is_quasi_iso(f: SeqMorphism, a: int, b: int,
                 positions: Optional[Iterable[int]] = None) -> bool:
    """True iff the induced map on (a, b) homology is an isomorphism at every position."""
    return all(quasi_iso_report(f, a, b, positions).values())


def reformulation_check(C: Sequence, a: int, b: int, j: int) -> bool:
    """Generalized homology of C against Kapranov homology of [ker d^(a+b)] C.

    Also compares the two second-isomorphism-theorem forms directly.
    """
    q = HomologyQuery(a, b, j)
    lhs = homology(C, q)
    K, counit = kernel_truncate(C, a + b)
    rhs = homology(K, q)
    if lhs.invariants != rhs.invariants:
        return False
    if not homology_induced(counit, q).is_isomorphism():
        return False
    ker = kernel(power_differential(C, j, a))
    im = image(power_differential(C, j - b, b))
    left = subquotient(ker, subgroup_intersection(ker, im))
    right = subquotient(subgroup_sum(ker, im), im)
    if left.invariants != right.invariants:
        return False
    return induced_map(GroupMorphism.identity(C.obj(j)), left, right).is_isomorphism()


# -- the inclusion poset ----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class LatticeReport:
    position: int
    n: int
    nodes: dict[str, Subgroup] = field(repr=False)
    edges: tuple[tuple[str, str, bool], ...]
    interior: bool

    @property
    def invariants(self) -> dict[str, tuple[int, tuple[int, ...]]]:
        return {name: S.as_group().invariants for name, S in self.nodes.items()}

    @property
    def all_hold(self) -> bool:
        return all(ok for _, _, ok in self.edges)

    def equal_nodes(self) -> list[tuple[str, str]]:
        names = list(self.nodes)
        return [(x, y) for i, x in enumerate(names) for y in names[i + 1:]
                if self.nodes[x] == self.nodes[y]]

    def to_dot(self) -> str:
        inv = self.invariants
        lines = ["digraph inclusions {", "  rankdir=BT;", "  node [shape=box];"]
        for name in self.nodes:
            label = f"{name}\\n{describe_invariants(*inv[name])}"
            lines.append(f'  "{name}" [label="{label}"];')
        for lower, upper, ok in self.edges:
            style = "" if ok else ' [color=red, style=dashed, label="fails"]'
            lines.append(f'  "{lower}" -> "{upper}"{style};')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _power_name(kind: str, k: int) -> str:
    return f"{kind} d" if k == 1 else f"{kind} d^{k}"


def inclusion_lattice(C: NComplex, j: int) -> LatticeReport:
    """All ker d^k and im d^k at position j, with every inclusion of the poset checked."""
    N = C.n
    nodes = {}
    for k in range(1, N):
        nodes[_power_name("ker", k)] = kernel(power_differential(C, j, k))
    for k in range(1, N):
        nodes[_power_name("im", k)] = image(power_differential(C, j - k, k))
    pairs = []
    for k in range(1, N - 1):
        pairs.append((_power_name("ker", k), _power_name("ker", k + 1)))
    for k in range(1, N - 1):
        pairs.append((_power_name("im", k + 1), _power_name("im", k)))
    for k in range(1, N):
        pairs.append((_power_name("im", N - k), _power_name("ker", k)))
    edges = tuple((lo, up, contains(nodes[up], nodes[lo])) for lo, up in pairs)
    interior = C.lo <= j - (N - 1) and j + (N - 1) <= C.hi
    return LatticeReport(j, N, nodes, edges, interior)
