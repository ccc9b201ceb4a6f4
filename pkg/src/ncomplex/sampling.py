"""Seeded random instances for the property suites.

Groups are drawn as ``Z/m_1 + ... + Z/m_k`` and then hidden behind a random
unimodular change of generators and a shuffled, redundant relation matrix.
The change of generators is kept, so the brute-force oracle can work in the
plain product group without ever calling the Smith form.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd, prod
from typing import Optional

from .brute import FiniteGroup, FiniteMap, model_group
from .complexes import (
    NComplex,
    SeqMorphism,
    Sequence,
    direct_sum_sequence,
    kernel_truncate,
    power_differential,
    power_morphism,
    quotient_sequence,
    r_n_expand,
    rebase,
    shift_morphism,
    sub_sequence,
    translate,
    translate_morphism,
    validate_ncomplex,
)
from .groups import GroupMorphism, PresentedGroup, Subgroup, image, kernel
from .intmat import IntMatrix, unimodular_inverse
from .resolutions import augmentation, classical_resolution


def random_unimodular(rng: random.Random, n: int, steps: Optional[int] = None,
                      spread: int = 2) -> tuple[IntMatrix, IntMatrix]:
    """A random unimodular matrix and its inverse, from elementary operations."""
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    Q = [[int(i == j) for j in range(n)] for i in range(n)]
    if n >= 2:
        for _ in range(steps if steps is not None else 2 * n):
            i, j = rng.sample(range(n), 2)
            c = rng.choice([c for c in range(-spread, spread + 1) if c])
            # P <- E P with E = I + c e_ij ; P^-1 <- P^-1 E^-1
            P[i] = [x + c * y for x, y in zip(P[i], P[j])]
            for row in Q:
                row[j] -= c * row[i]
    for i in range(n):
        if rng.random() < 0.3:
            P[i] = [-x for x in P[i]]
            for row in Q:
                row[i] = -row[i]
    return IntMatrix.from_rows(P, n), IntMatrix.from_rows(Q, n)


def random_moduli(rng: random.Random, max_order: int, max_factors: int = 3,
                  allow_free: bool = False) -> tuple[int, ...]:
    """Cyclic orders with product at most ``max_order``; 0 stands for Z."""
    while True:
        k = rng.randint(0, max_factors)
        mods = []
        for _ in range(k):
            if allow_free and rng.random() < 0.2:
                mods.append(0)
            else:
                mods.append(rng.randint(1, max(1, max_order)))
        if prod(m for m in mods if m) <= max_order:
            return tuple(mods)


@dataclass(frozen=True)
class ModelGroup:
    """A presented group together with a known isomorphism to a product of cyclics."""

    group: PresentedGroup
    moduli: tuple[int, ...]
    to_model: IntMatrix
    from_model: IntMatrix

    @property
    def finite(self) -> bool:
        return all(m > 0 for m in self.moduli)

    def oracle(self, bound: int = 512) -> FiniteGroup:
        return model_group(self.moduli, self.to_model, self.from_model, bound)


def scramble(rng: random.Random, moduli: tuple[int, ...], scramble_level: int = 2) -> ModelGroup:
    k = len(moduli)
    P, Pinv = random_unimodular(rng, k, spread=scramble_level)
    Q, _ = random_unimodular(rng, k, spread=scramble_level)
    R = Pinv @ IntMatrix.diagonal(list(moduli)) @ Q
    cols = [c for c in R.columns() if any(c)]
    # redundant relations: integer combinations of the real ones
    for _ in range(rng.randint(0, 2) if cols else 0):
        coeffs = [rng.randint(-2, 2) for _ in cols]
        cols.append(tuple(sum(a * c[i] for a, c in zip(coeffs, cols)) for i in range(k)))
    rng.shuffle(cols)
    G = PresentedGroup(k, IntMatrix.from_columns(cols, k))
    return ModelGroup(G, tuple(moduli), P, Pinv)


def random_model_group(rng: random.Random, max_order: int = 64, allow_free: bool = False,
                       max_factors: int = 3) -> ModelGroup:
    return scramble(rng, random_moduli(rng, max_order, max_factors, allow_free))


def random_model_matrix(rng: random.Random, src: tuple[int, ...], tgt: tuple[int, ...],
                        zero_bias: float = 0.3) -> IntMatrix:
    """A well-defined matrix between products of cyclic groups (0 = Z)."""
    rows = []
    for mi in tgt:
        row = []
        for mj in src:
            if mi == 0:
                step = 0 if mj else 1
            elif mj == 0:
                step = 1
            else:
                step = mi // gcd(mi, mj)
            if step == 0 or rng.random() < zero_bias:
                row.append(0)
            elif mi:
                row.append(step * rng.randrange(0, max(1, mi // step)))
            else:
                row.append(rng.randint(-3, 3))
        rows.append(row)
    return IntMatrix.from_rows(rows, len(src))


def engine_matrix(F: IntMatrix, src: ModelGroup, tgt: ModelGroup) -> IntMatrix:
    """Translate a model-level matrix into the scrambled generators."""
    return tgt.from_model @ F @ src.to_model


@dataclass(frozen=True)
class ModelSequence:
    sequence: Sequence
    groups: tuple[ModelGroup, ...]

    def oracle(self, bound: int = 512) -> tuple[list[FiniteGroup], list[FiniteMap]]:
        C = self.sequence
        gs = [g.oracle(bound) for g in self.groups]
        maps = [FiniteMap.from_matrix(C.diff(i).matrix, gs[k], gs[k + 1])
                for k, i in enumerate(C.positions[:-1])]
        return gs, maps


def _assemble(lo: int, groups: list[ModelGroup], model_maps: list[IntMatrix]) -> ModelSequence:
    objs = tuple(g.group for g in groups)
    diffs = tuple(GroupMorphism(groups[k].group, groups[k + 1].group,
                                engine_matrix(F, groups[k], groups[k + 1]))
                  for k, F in enumerate(model_maps))
    return ModelSequence(Sequence(lo, lo + len(groups) - 1, objs, diffs), tuple(groups))


def random_model_sequence(rng: random.Random, max_width: int = 6, max_order: int = 64,
                          allow_free: bool = False, lo: Optional[int] = None,
                          width: Optional[int] = None) -> ModelSequence:
    w = width if width is not None else rng.randint(1, max_width)
    lo = lo if lo is not None else rng.randint(-3, 3)
    groups = [random_model_group(rng, max_order, allow_free) for _ in range(w)]
    maps = [random_model_matrix(rng, groups[k].moduli, groups[k + 1].moduli) for k in range(w - 1)]
    return _assemble(lo, groups, maps)


def random_sequence(rng: random.Random, max_width: int = 6, max_order: int = 64,
                    allow_free: bool = True) -> Sequence:
    return random_model_sequence(rng, max_width, max_order, allow_free).sequence


def _cyclic_chain(rng: random.Random, N: int, width: int, max_order: int) -> ModelSequence:
    """Diagonal multiplication chains on Z/m_1 + ... with every N-fold product vanishing."""
    k = rng.randint(1, 2)
    mods = []
    while len(mods) < k:
        m = rng.randint(2, max_order)
        if prod(mods) * m <= max_order:
            mods.append(m)
        elif not mods:
            continue
        else:
            break
    scalars = []
    for m in mods:
        cs = []
        for t in range(width - 1):
            prev = prod(cs[max(0, t - N + 1):t]) if t else 1
            c = rng.randrange(m)
            window_full = t >= N - 1
            if window_full and (prev * c) % m:
                step = m // gcd(m, prev)
                c = (step * rng.randrange(m)) % m
            cs.append(c)
        scalars.append(cs)
    groups = [scramble(rng, tuple(mods)) for _ in range(width)]
    maps = [IntMatrix.diagonal([scalars[s][t] for s in range(len(mods))]) for t in range(width - 1)]
    return _assemble(rng.randint(-3, 3), groups, maps)


def _nilpotent_chain(rng: random.Random, N: int, width: int, max_order: int) -> ModelSequence:
    """(Z/m)^k with a constant strictly upper-triangular differential, k <= N."""
    options = [(m, k) for m in range(2, max_order + 1) for k in range(1, min(N, 3) + 1)
               if m ** k <= max_order]
    m, k = rng.choice(options)
    rows = [[rng.randrange(m) if j > i else 0 for j in range(k)] for i in range(k)]
    D = IntMatrix.from_rows(rows, k)
    groups = [scramble(rng, (m,) * k) for _ in range(width)]
    return _assemble(rng.randint(-3, 3), groups, [D] * (width - 1))


def random_ncomplex(rng: random.Random, N: int, max_width: int = 8, max_order: int = 64,
                    kind: Optional[str] = None) -> NComplex:
    """A random N-complex of finite groups, mixing several constructions."""
    kind = kind or rng.choice(["truncate", "truncate", "cyclic", "nilpotent", "expand"])
    width = rng.randint(1, max_width)
    if kind == "cyclic":
        return validate_ncomplex(_cyclic_chain(rng, N, width, max_order).sequence, N)
    if kind == "nilpotent":
        return validate_ncomplex(_nilpotent_chain(rng, N, width, max_order).sequence, N)
    if kind == "expand" and N >= 2:
        for _ in range(10):
            two = kernel_truncate(random_model_sequence(rng, 3, max_order).sequence, 2)[0]
            E = r_n_expand(two, N)
            if E.hi - E.lo + 1 <= max_width:
                return E
    S = random_model_sequence(rng, max_width, max_order, width=width).sequence
    return kernel_truncate(S, N)[0]


# -- random morphisms -------------------------------------------------------------

def _stable_subgroups(rng: random.Random, C: Sequence) -> dict[int, Subgroup]:
    kind = rng.choice(["multiple", "ker", "im"])
    k = rng.randint(1, 3)
    if kind == "multiple":
        m = rng.randint(0, 4)
        return {i: Subgroup.of(C.obj(i), IntMatrix.identity(C.obj(i).generators) * m)
                for i in C.positions}
    if kind == "ker":
        return {i: kernel(power_differential(C, i, k)) for i in C.positions}
    return {i: image(power_differential(C, i - k, k)) for i in C.positions}


def random_changes(rng: random.Random, C: Sequence) -> dict:
    return {i: random_unimodular(rng, C.obj(i).generators) for i in C.positions}


def random_seq_morphism(rng: random.Random, C: Sequence) -> SeqMorphism:
    """A random morphism of sequences out of C."""
    kind = rng.choice(["scalar", "shift", "quotient", "rebase", "sum", "composite"])
    if kind == "scalar":
        return rng.randint(-3, 3) * SeqMorphism.identity(C)
    if kind == "shift":
        return power_morphism(C, rng.randint(1, 2)) if rng.random() < 0.5 else shift_morphism(C)
    if kind == "quotient":
        return quotient_sequence(C, _stable_subgroups(rng, C))[1]
    if kind == "rebase":
        return rebase(C, random_changes(rng, C))[1]
    if kind == "sum":
        E = random_model_sequence(rng, 3, 16, lo=C.lo if C.hi >= C.lo else 0).sequence
        _, maps = direct_sum_sequence(C, E)
        return maps["inc1"]
    Q, proj = quotient_sequence(C, _stable_subgroups(rng, C))
    if rng.random() < 0.5:
        return shift_morphism(Q) @ proj
    return (rng.randint(-2, 2) * SeqMorphism.identity(Q)) @ proj


def random_morphism_into(rng: random.Random, D: Sequence) -> SeqMorphism:
    """A random morphism of sequences ending at D."""
    kind = rng.choice(["scalar", "sub", "counit", "proj"])
    if kind == "scalar":
        return rng.randint(-3, 3) * SeqMorphism.identity(D)
    if kind == "sub":
        return sub_sequence(D, _stable_subgroups(rng, D))[1]
    if kind == "counit":
        return kernel_truncate(D, rng.randint(1, 3))[1]
    E = random_model_sequence(rng, 3, 16, lo=D.lo if D.hi >= D.lo else 0).sequence
    _, maps = direct_sum_sequence(D, E)
    return maps["proj1"]


def random_composable_pair(rng: random.Random, C: Sequence) -> tuple[SeqMorphism, SeqMorphism]:
    f = random_seq_morphism(rng, C)
    g = random_seq_morphism(rng, f.target)
    return f, g


# -- quasi-isomorphisms of 2-complexes ------------------------------------------------

def contractible(G: PresentedGroup, i: int) -> NComplex:
    """G --id--> G at positions i, i+1."""
    return NComplex(i, i + 1, (G, G), (GroupMorphism.identity(G),), 2)


def random_two_complex(rng: random.Random, max_width: int = 4, max_order: int = 64) -> NComplex:
    S = random_model_sequence(rng, max_width, max_order, allow_free=True).sequence
    return kernel_truncate(S, 2)[0]


def random_quasi_iso(rng: random.Random, max_order: int = 64) -> SeqMorphism:
    """A random ordinary quasi-isomorphism between bounded 2-complexes."""
    if rng.random() < 0.5:
        X = random_model_group(rng, max_order, allow_free=True).group
        P = classical_resolution(X)
        f = augmentation(P, X)
        shift = rng.randint(-2, 2)
        f = translate_morphism(f, shift)
        f = SeqMorphism(validate_ncomplex(f.source, 2), validate_ncomplex(f.target, 2),
                        f.lo, f.hi, f.components)
    else:
        C = random_two_complex(rng)
        f = SeqMorphism.identity(C)
    for _ in range(rng.randint(0, 3)):
        step = rng.choice(["rebase_after", "cone_after", "cone_before", "rebase_before"])
        if step == "rebase_after":
            D, iso = rebase(f.target, random_changes(rng, f.target))
            f = iso @ f
        elif step == "rebase_before":
            D, iso = rebase(f.source, random_changes(rng, f.source))
            # iso: source -> D, so precompose with its inverse given by the P^-1
            inv = SeqMorphism(D, f.source, iso.lo, iso.hi, tuple(
                GroupMorphism(c.target, c.source, unimodular_inverse(c.matrix)) for c in iso.components))
            f = f @ inv
        else:
            base = f.target if step == "cone_after" else f.source
            lo = base.lo if base.hi >= base.lo else 0
            i = rng.randint(lo - 1, max(lo, base.hi))
            A = contractible(random_model_group(rng, 16, allow_free=True).group, i)
            _, maps = direct_sum_sequence(base, A)
            f = maps["inc1"] @ f if step == "cone_after" else f @ maps["proj1"]
    return f
