"""Z-indexed sequences, N-complexes and the functors between them.

A sequence is stored on a finite window ``[lo, hi]``; every object outside
the window is the zero group and every differential touching the outside
is the zero map. Differentials raise the index: ``d_i : C_i -> C_{i+1}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Mapping, Optional, Sequence as Seq, Union

from .groups import (
    GroupMorphism,
    IllDefinedMorphismError,
    PresentedGroup,
    Subgroup,
    check_morphism,
    contains,
    direct_sum,
    kernel,
    subquotient,
)
from .intmat import IntMatrix, block_diag, hstack

ZERO = PresentedGroup.zero()


class NotAnNComplexError(ValueError):
    def __init__(self, position: int, n: int):
        super().__init__(f"d^{n} is not zero at position {position}")
        self.position = position
        self.n = n


class NonCommutingSquareError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Sequence:
    lo: int
    hi: int
    objects: tuple[PresentedGroup, ...]
    differentials: tuple[GroupMorphism, ...]

    def __post_init__(self):
        width = max(self.hi - self.lo + 1, 0)
        if len(self.objects) != width or len(self.differentials) != max(width - 1, 0):
            raise ValueError(f"window [{self.lo}, {self.hi}] does not match "
                             f"{len(self.objects)} objects / {len(self.differentials)} differentials")

    # exact data comparison; an N-complex equals its embedded sequence
    def __eq__(self, other) -> bool:
        if not isinstance(other, Sequence):
            return NotImplemented
        if self is other:
            return True
        return (self.lo, self.hi, self.objects) == (other.lo, other.hi, other.objects) and all(
            a.matrix == b.matrix for a, b in zip(self.differentials, other.differentials))

    def __hash__(self) -> int:
        return hash((self.lo, self.hi, self.objects))

    @cached_property
    def _cache(self) -> dict:
        return {}

    @property
    def window(self) -> tuple[int, int]:
        return (self.lo, self.hi)

    @property
    def positions(self) -> range:
        return range(self.lo, self.hi + 1)

    def in_window(self, i: int) -> bool:
        return self.lo <= i <= self.hi

    def obj(self, i: int) -> PresentedGroup:
        return self.objects[i - self.lo] if self.in_window(i) else ZERO

    def diff(self, i: int) -> GroupMorphism:
        if self.lo <= i < self.hi:
            return self.differentials[i - self.lo]
        return GroupMorphism.zero(self.obj(i), self.obj(i + 1))

    def is_zero(self) -> bool:
        return all(G.is_trivial() for G in self.objects)


@dataclass(frozen=True, eq=False)
class NComplex(Sequence):
    """A sequence certified to satisfy d^n = 0."""

    n: int = 2


def zero_sequence() -> Sequence:
    return Sequence(0, -1, (), ())


def _as_morphism(d, source: PresentedGroup, target: PresentedGroup) -> GroupMorphism:
    if isinstance(d, GroupMorphism):
        if d.source != source or d.target != target:
            raise ValueError("differential does not connect the neighbouring objects")
        return d
    m = d if isinstance(d, IntMatrix) else IntMatrix.from_rows(d, source.generators)
    return GroupMorphism(source, target, m)


def make_sequence(window: tuple[int, int], objects: Seq[PresentedGroup],
                  differentials: Seq[Union[GroupMorphism, IntMatrix, list]]) -> Sequence:
    """Build and validate a sequence; raw matrices are wrapped as morphisms."""
    lo, hi = window
    if hi < lo:
        if objects or differentials:
            raise ValueError("empty window with data")
        return zero_sequence()
    objects = tuple(objects)
    if len(objects) != hi - lo + 1 or len(differentials) != hi - lo:
        raise ValueError(f"window [{lo}, {hi}] needs {hi - lo + 1} objects and {hi - lo} differentials")
    ds = []
    for k, d in enumerate(differentials):
        f = _as_morphism(d, objects[k], objects[k + 1])
        if not check_morphism(f):
            raise IllDefinedMorphismError(f"differential at position {lo + k} is not well defined")
        ds.append(f)
    return Sequence(lo, hi, objects, tuple(ds))


def power_differential(C: Sequence, i: int, k: int) -> GroupMorphism:
    """The composite d^k : C_i -> C_{i+k}."""
    if k < 0:
        raise ValueError("negative power")
    key = ("pow", i, k)
    cache = C._cache
    if key not in cache:
        if k == 0:
            f = GroupMorphism.identity(C.obj(i))
        elif not (C.in_window(i) and C.in_window(i + k)):
            f = GroupMorphism.zero(C.obj(i), C.obj(i + k))
        else:
            f = C.diff(i + k - 1) @ power_differential(C, i, k - 1)
        cache[key] = f
    return cache[key]


def is_ncomplex(C: Sequence, N: int) -> Optional[int]:
    """First position where d^N fails to vanish, or None."""
    for i in range(C.lo, C.hi - N + 1):
        if not power_differential(C, i, N).is_zero():
            return i
    return None


def validate_ncomplex(C: Sequence, N: int) -> NComplex:
    if N < 1:
        raise ValueError("N must be at least 1")
    if isinstance(C, NComplex) and C.n <= N:
        return C if C.n == N else NComplex(C.lo, C.hi, C.objects, C.differentials, N)
    bad = is_ncomplex(C, N)
    if bad is not None:
        raise NotAnNComplexError(bad, N)
    return NComplex(C.lo, C.hi, C.objects, C.differentials, N)


def embed(C: NComplex) -> Sequence:
    """Forget the d^N = 0 certificate."""
    return Sequence(C.lo, C.hi, C.objects, C.differentials)


def translate(C: Sequence, j: int) -> Sequence:
    """T^j C: position i holds C_{i+j}."""
    if isinstance(C, NComplex):
        return NComplex(C.lo - j, C.hi - j, C.objects, C.differentials, C.n)
    return Sequence(C.lo - j, C.hi - j, C.objects, C.differentials)


# -- morphisms of sequences -----------------------------------------------------

@dataclass(frozen=True, eq=False)
class SeqMorphism:
    """Level-wise morphisms f_i : C_i -> D_i on the union of both windows."""

    source: Sequence
    target: Sequence
    lo: int
    hi: int
    components: tuple[GroupMorphism, ...]

    def component(self, i: int) -> GroupMorphism:
        if self.lo <= i <= self.hi:
            return self.components[i - self.lo]
        return GroupMorphism.zero(self.source.obj(i), self.target.obj(i))

    @property
    def positions(self) -> range:
        return range(self.lo, self.hi + 1)

    def __matmul__(self, other: "SeqMorphism") -> "SeqMorphism":
        """Composition ``self o other``."""
        if other.target != self.source:
            raise ValueError("composition of non-composable sequence morphisms")
        lo, hi = _union(other.source, self.target)
        comps = {i: self.component(i) @ other.component(i) for i in range(lo, hi + 1)}
        return _build(other.source, self.target, comps)

    def __add__(self, other: "SeqMorphism") -> "SeqMorphism":
        if self.source != other.source or self.target != other.target:
            raise ValueError("sequence morphisms are not parallel")
        lo, hi = min(self.lo, other.lo), max(self.hi, other.hi)
        return _build(self.source, self.target,
                      {i: self.component(i) + other.component(i) for i in range(lo, hi + 1)})

    def __mul__(self, c: int) -> "SeqMorphism":
        return _build(self.source, self.target, {i: c * self.component(i) for i in self.positions})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, SeqMorphism):
            return NotImplemented
        if self.source != other.source or self.target != other.target:
            return False
        lo, hi = min(self.lo, other.lo), max(self.hi, other.hi)
        return all(self.component(i) == other.component(i) for i in range(lo, hi + 1))

    def __hash__(self) -> int:
        return hash((self.source, self.target))

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.components)

    @classmethod
    def identity(cls, C: Sequence) -> "SeqMorphism":
        return _build(C, C, {i: GroupMorphism.identity(C.obj(i)) for i in C.positions})

    @classmethod
    def zero(cls, C: Sequence, D: Sequence) -> "SeqMorphism":
        return _build(C, D, {})


def _union(C: Sequence, D: Sequence) -> tuple[int, int]:
    wins = [(S.lo, S.hi) for S in (C, D) if S.lo <= S.hi]
    if not wins:
        return (0, -1)
    return min(w[0] for w in wins), max(w[1] for w in wins)


def _build(C: Sequence, D: Sequence, comps: Mapping[int, GroupMorphism]) -> SeqMorphism:
    lo, hi = _union(C, D)
    out = []
    for i in range(lo, hi + 1):
        f = comps.get(i)
        out.append(f if f is not None else GroupMorphism.zero(C.obj(i), D.obj(i)))
    return SeqMorphism(C, D, lo, hi, tuple(out))


def make_seq_morphism(source: Sequence, target: Sequence,
                      components: Mapping[int, Union[GroupMorphism, IntMatrix, list]]) -> SeqMorphism:
    """Build a morphism of sequences and check every square commutes."""
    lo, hi = _union(source, target)
    comps = {}
    for i, f in components.items():
        f = _as_morphism(f, source.obj(i), target.obj(i))
        if not check_morphism(f):
            raise IllDefinedMorphismError(f"component at position {i} is not well defined")
        comps[i] = f
    f = _build(source, target, comps)
    bad = first_noncommuting_square(f)
    if bad is not None:
        raise NonCommutingSquareError(f"square at position {bad} does not commute")
    return f


def first_noncommuting_square(f: SeqMorphism) -> Optional[int]:
    C, D = f.source, f.target
    for i in range(f.lo - 1, f.hi + 1):
        if D.diff(i) @ f.component(i) != f.component(i + 1) @ C.diff(i):
            return i
    return None


def translate_morphism(f: SeqMorphism, j: int) -> SeqMorphism:
    return SeqMorphism(translate(f.source, j), translate(f.target, j), f.lo - j, f.hi - j,
                       f.components)


def shift_morphism(C: Sequence) -> SeqMorphism:
    """The differential as a morphism C -> T^1 C."""
    T1 = translate(C, 1)
    return _build(C, T1, {i: C.diff(i) for i in C.positions})


def power_morphism(C: Sequence, k: int) -> SeqMorphism:
    """d^k as a morphism C -> T^k C."""
    Tk = translate(C, k)
    return _build(C, Tk, {i: power_differential(C, i, k) for i in C.positions})


# -- S^(a,b) ------------------------------------------------------------------

def _s_index(q: int, a: int, b: int) -> int:
    k, r = divmod(q, 2)
    return k * (a + b) + (a if r else 0)


def s_functor(C: Sequence, a: int, b: int) -> Sequence:
    """Fold C into a 2-term-periodic sequence with alternating d^a, d^b.

    Output position 2k holds C_{k(a+b)} and 2k+1 holds C_{k(a+b)+a}.
    """
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    if C.hi < C.lo:
        return zero_sequence()
    p = a + b
    qs = [q for q in range(2 * ((C.lo - a) // p) - 2, 2 * (C.hi // p) + 3)
          if C.in_window(_s_index(q, a, b))]
    if not qs:
        return zero_sequence()
    lo, hi = qs[0], qs[-1]
    objs = [C.obj(_s_index(q, a, b)) for q in range(lo, hi + 1)]
    diffs = [power_differential(C, _s_index(q, a, b), a if q % 2 == 0 else b)
             for q in range(lo, hi)]
    S = Sequence(lo, hi, tuple(objs), tuple(diffs))
    if isinstance(C, NComplex) and p >= C.n:
        return NComplex(S.lo, S.hi, S.objects, S.differentials, 2)
    return S


def s_functor_morphism(f: SeqMorphism, a: int, b: int) -> SeqMorphism:
    S, T = s_functor(f.source, a, b), s_functor(f.target, a, b)
    lo, hi = _union(S, T)
    return _build(S, T, {q: f.component(_s_index(q, a, b)) for q in range(lo, hi + 1)})


# -- sub- and quotient sequences -------------------------------------------------

@dataclass(frozen=True)
class _Sub:
    complex: Sequence
    inclusion: SeqMorphism
    coords: dict  # position -> (element of C_i inside S_i -> coordinates on S_i's generators)


def _identity_coords(v):
    return tuple(v)


def _coords_or_abort(coords: Callable, v, position: int) -> tuple[int, ...]:
    try:
        return coords(v)
    except ValueError as exc:
        raise RuntimeError(f"element escaped the subgroup at position {position}") from exc


def _sub_sequence(C: Sequence, subgroups: Mapping[int, Subgroup]) -> _Sub:
    objs, incs, coords = [], [], {}
    for i in C.positions:
        S = subgroups.get(i)
        G = C.obj(i)
        if S is None or contains(S, Subgroup.whole(G)):
            objs.append(G)
            incs.append(GroupMorphism.identity(G))
            coords[i] = _identity_coords
        else:
            sq = subquotient(S, Subgroup.trivial(G))
            objs.append(sq.quotient)
            incs.append(GroupMorphism(sq.quotient, G, sq.lift))
            coords[i] = sq.coordinates
    diffs = []
    for k, i in enumerate(C.positions[:-1]):
        d = C.diff(i)
        if coords[i] is _identity_coords and coords[i + 1] is _identity_coords:
            diffs.append(d)
            continue
        image = d.matrix @ incs[k].matrix
        cols = [_coords_or_abort(coords[i + 1], c, i + 1) for c in image.columns()]
        diffs.append(GroupMorphism(objs[k], objs[k + 1],
                                   IntMatrix.from_columns(cols, objs[k + 1].generators)))
    S = Sequence(C.lo, C.hi, tuple(objs), tuple(diffs))
    return _Sub(S, _build(S, C, dict(zip(C.positions, incs))), coords)


def sub_sequence(C: Sequence, subgroups: Mapping[int, Subgroup]) -> tuple[Sequence, SeqMorphism]:
    """The subsequence on d-stable subgroups S_i (missing positions keep C_i), with its inclusion.

    Raises RuntimeError when d(S_i) is not inside S_{i+1}.
    """
    sub = _sub_sequence(C, subgroups)
    return sub.complex, sub.inclusion


def quotient_sequence(C: Sequence, subgroups: Mapping[int, Subgroup]) -> tuple[Sequence, SeqMorphism]:
    """C / S for d-stable subgroups S_i, with the projection C -> C / S."""
    objs = []
    for i in C.positions:
        G = C.obj(i)
        S = subgroups.get(i)
        objs.append(G if S is None else PresentedGroup(G.generators, hstack(G.relations, S.gens)))
    diffs = []
    for k, i in enumerate(C.positions[:-1]):
        f = GroupMorphism(objs[k], objs[k + 1], C.diff(i).matrix)
        if not check_morphism(f):
            raise ValueError(f"subgroups are not stable under d at position {i}")
        diffs.append(f)
    Q = Sequence(C.lo, C.hi, tuple(objs), tuple(diffs))
    proj = _build(C, Q, {i: GroupMorphism(C.obj(i), Q.obj(i), IntMatrix.identity(C.obj(i).generators))
                         for i in C.positions})
    return Q, proj


def direct_sum_sequence(C: Sequence, D: Sequence) -> tuple[Sequence, dict[str, SeqMorphism]]:
    """C + D with its two inclusions and two projections."""
    lo, hi = _union(C, D)
    if hi < lo:
        Z = zero_sequence()
        z = SeqMorphism.zero(Z, Z)
        return Z, {"inc1": z, "inc2": z, "proj1": z, "proj2": z}
    objs = [direct_sum(C.obj(i), D.obj(i)) for i in range(lo, hi + 1)]
    diffs = [GroupMorphism(objs[k], objs[k + 1], block_diag(C.diff(i).matrix, D.diff(i).matrix))
             for k, i in enumerate(range(lo, hi))]
    E = Sequence(lo, hi, tuple(objs), tuple(diffs))
    maps = {}
    for name, X, first in (("1", C, True), ("2", D, False)):
        inc, proj = {}, {}
        for i in range(lo, hi + 1):
            c, d = C.obj(i).generators, D.obj(i).generators
            sel = range(0, c) if first else range(c, c + d)
            I = IntMatrix.identity(c + d)
            proj[i] = GroupMorphism(E.obj(i), X.obj(i), I.select_rows(sel))
            inc[i] = GroupMorphism(X.obj(i), E.obj(i), I.select_columns(sel))
        maps["inc" + name] = _build(X, E, inc)
        maps["proj" + name] = _build(E, X, proj)
    return E, maps


def rebase(C: Sequence, changes: Mapping[int, tuple[IntMatrix, IntMatrix]]) -> tuple[Sequence, SeqMorphism]:
    """Re-present each C_i along a unimodular pair (P_i, P_i^-1).

    Returns the new sequence and the isomorphism C -> new given by the P_i.
    """
    ch = {i: changes.get(i) or (IntMatrix.identity(C.obj(i).generators),) * 2 for i in C.positions}
    objs = tuple(PresentedGroup(C.obj(i).generators, ch[i][0] @ C.obj(i).relations)
                 for i in C.positions)
    diffs = tuple(GroupMorphism(objs[k], objs[k + 1], ch[i + 1][0] @ C.diff(i).matrix @ ch[i][1])
                  for k, i in enumerate(C.positions[:-1]))
    D = Sequence(C.lo, C.hi, objs, diffs)
    return D, _build(C, D, {i: GroupMorphism(C.obj(i), D.obj(i), ch[i][0]) for i in C.positions})


# -- kernel truncation ----------------------------------------------------------

def _truncation(C: Sequence, N: int) -> _Sub:
    key = ("trunc", N)
    if key not in C._cache:
        sub = _sub_sequence(C, {i: kernel(power_differential(C, i, N)) for i in C.positions})
        K = sub.complex
        bad = is_ncomplex(K, N)
        if bad is not None:
            raise RuntimeError(f"kernel truncation produced d^{N} != 0 at {bad}")
        K = NComplex(K.lo, K.hi, K.objects, K.differentials, N)
        inc = sub.inclusion
        C._cache[key] = _Sub(K, SeqMorphism(K, C, inc.lo, inc.hi, inc.components), sub.coords)
    return C._cache[key]


def kernel_truncate(C: Sequence, N: int) -> tuple[NComplex, SeqMorphism]:
    """The largest sub-N-complex [ker d^N]C together with its inclusion into C."""
    if N < 1:
        raise ValueError("N must be at least 1")
    t = _truncation(C, N)
    return t.complex, t.inclusion


def truncate_morphism(f: SeqMorphism, N: int) -> SeqMorphism:
    """The unique f' with k_D o f' = f o k_C."""
    tc, td = _truncation(f.source, N), _truncation(f.target, N)
    KC, KD = tc.complex, td.complex
    comps = {}
    for i in f.positions:
        src, tgt = KC.obj(i), KD.obj(i)
        if src.generators == 0 or tgt.generators == 0:
            continue
        image = f.component(i).matrix @ tc.inclusion.component(i).matrix
        cols = [_coords_or_abort(td.coords[i], c, i) for c in image.columns()]
        comps[i] = GroupMorphism(src, tgt, IntMatrix.from_columns(cols, tgt.generators))
    return _build(KC, KD, comps)


# -- repetition functor R_N -------------------------------------------------------

def _r_index(p: int, N: int) -> int:
    j, t = divmod(p, N)
    return 2 * j if t == 0 else 2 * j + 1


def _r_window(lo: int, hi: int, N: int) -> tuple[int, int]:
    plo = N * (lo // 2) if lo % 2 == 0 else N * ((lo - 1) // 2) + 1
    phi = N * (hi // 2) if hi % 2 == 0 else N * ((hi - 1) // 2) + N - 1
    return plo, phi


def r_n_expand(C: Sequence, N: int) -> NComplex:
    """Repeat each odd-degree object of a 2-complex N - 1 times, joined by identities."""
    if N < 2:
        raise ValueError("N must be at least 2")
    C = validate_ncomplex(C, 2)
    if C.hi < C.lo:
        return NComplex(0, -1, (), (), N)
    plo, phi = _r_window(C.lo, C.hi, N)
    objs = [C.obj(_r_index(p, N)) for p in range(plo, phi + 1)]
    diffs = []
    for p in range(plo, phi):
        j, t = divmod(p, N)
        if t == 0:
            diffs.append(C.diff(2 * j))
        elif t == N - 1:
            diffs.append(C.diff(2 * j + 1))
        else:
            diffs.append(GroupMorphism.identity(C.obj(2 * j + 1)))
    return validate_ncomplex(Sequence(plo, phi, tuple(objs), tuple(diffs)), N)


def r_n_expand_morphism(f: SeqMorphism, N: int) -> SeqMorphism:
    S, T = r_n_expand(f.source, N), r_n_expand(f.target, N)
    lo, hi = _union(S, T)
    return _build(S, T, {p: f.component(_r_index(p, N)) for p in range(lo, hi + 1)})
