"""Seeded property suites, shared by the ``check`` command and the test suite.

Every case draws its instance from its own ``random.Random`` keyed on the
instance family, the seed and the case number, so any single case can be
replayed on its own. Suites over the same family see the same instances.
"""

from __future__ import annotations

import random
import time
import traceback
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .brute import (
    FiniteMap,
    brute_force_group,
    invariants_profile,
    quotient_profile,
    sequence_homology,
)
from .complexes import (
    SeqMorphism,
    embed,
    is_ncomplex,
    kernel_truncate,
    r_n_expand,
    r_n_expand_morphism,
    s_functor,
    translate,
    truncate_morphism,
)
from .groups import (
    GroupMorphism,
    contains,
    image,
    kernel,
    subgroup_intersection,
    subgroup_sum,
    subquotient,
)
from .homology import (
    HomologyQuery,
    TotalHomologyError,
    bisequence_square_commutes,
    factorization_check,
    homology,
    homology_sequence,
    is_quasi_iso,
    reformulation_check,
    total_homology,
)
from .io import dump_complex, dump_group, dump_matrix, dump_morphism
from .resolutions import hh_projective_resolution, is_projective, verify_lower_bound
from .sampling import (
    engine_matrix,
    random_model_group,
    random_model_matrix,
    random_model_sequence,
    random_morphism_into,
    random_ncomplex,
    random_quasi_iso,
    random_seq_morphism,
    random_sequence,
)


class Case:
    """Collects the instance and the outcome of one randomized case."""

    def __init__(self, rng: random.Random):
        self.rng = rng
        self.instance: dict = {}
        self.checks = 0
        self.failures: list[str] = []

    def record(self, key: str, value) -> None:
        self.instance[key] = value

    def check(self, ok: bool, message: str) -> bool:
        self.checks += 1
        if not ok:
            self.failures.append(message)
        return ok


@dataclass
class CaseFailure:
    case: int
    messages: list[str]
    instance: dict = field(repr=False)


@dataclass
class SuiteResult:
    suite: str
    seed: int
    cases: int
    checks: int
    seconds: float
    failures: list[CaseFailure]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"suite": self.suite, "seed": self.seed, "cases": self.cases,
                "checks": self.checks, "seconds": round(self.seconds, 3), "ok": self.ok,
                "failed_cases": [f.case for f in self.failures]}


# -- instance families ------------------------------------------------------------

def ncomplex_instance(case: Case):
    N = case.rng.randint(2, 5)
    C = random_ncomplex(case.rng, N, max_width=8, max_order=64)
    case.record("complex", dump_complex(C))
    return C


def _valid_queries(N: int) -> Iterable[tuple[int, int]]:
    return [(a, b) for a in range(1, N + 1) for b in range(1, N + 1) if a + b >= N]


# -- suites -----------------------------------------------------------------------

def suite_adjunction(case: Case) -> None:
    rng = case.rng
    C = random_sequence(rng, max_width=6, max_order=64, allow_free=True)
    N = rng.randint(1, 5)
    f = random_seq_morphism(rng, C) if rng.random() < 0.5 else random_morphism_into(rng, C)
    g = random_seq_morphism(rng, f.target)
    case.record("N", N)
    case.record("f", dump_morphism(f))
    case.record("g", dump_morphism(g))

    K, k = kernel_truncate(C, N)
    case.check(is_ncomplex(K, N) is None, "truncation is not an N-complex")
    case.check(all(c.is_injective() for c in k.components), "counit is not a monomorphism")
    # counit at an N-complex is the identity, and truncation fixes N-complexes
    K2, k2 = kernel_truncate(embed(K), N)
    case.check(K2 == K and k2 == SeqMorphism.identity(K), "k at an N-complex is not the identity")
    # [ker d^N](k_C) o unit = id, the unit being the identity
    case.check(truncate_morphism(k, N) == SeqMorphism.identity(K), "[ker d^N](k) is not the identity")
    # naturality of the counit
    kS = kernel_truncate(f.source, N)[1]
    kD = kernel_truncate(f.target, N)[1]
    case.check(kD @ truncate_morphism(f, N) == f @ kS, "counit is not natural")
    case.check(truncate_morphism(g @ f, N) == truncate_morphism(g, N) @ truncate_morphism(f, N),
               "truncation does not respect composition")
    case.check(truncate_morphism(SeqMorphism.identity(C), N) == SeqMorphism.identity(K),
               "truncation does not preserve identities")


def suite_factorization(case: Case) -> None:
    C = ncomplex_instance(case)
    for a, b in _valid_queries(C.n):
        for j in C.positions:
            case.check(is_ncomplex(s_functor(translate(C, j), a, b), 2) is None,
                       f"S^({a},{b}) T^{j} C is not a 2-complex")
            case.check(factorization_check(C, HomologyQuery(a, b, j)),
                       f"H^({a},{b})_{j} differs from H^(1,1)_0 S^({a},{b}) T^{j}")


def suite_m_complex(case: Case) -> None:
    C = ncomplex_instance(case)
    for a, b in _valid_queries(C.n):
        H = homology_sequence(C, a, b)
        bad = is_ncomplex(H, min(a, b))
        case.check(bad is None, f"(a,b)=({a},{b}): d^{min(a, b)} on homology nonzero at {bad}")


def suite_total(case: Case) -> None:
    rng = case.rng
    N = rng.choice([2, 3, 4, 4, 5, 5])
    C = random_ncomplex(rng, N, max_width=8, max_order=64)
    case.record("complex", dump_complex(C))
    for interior in (True, False):
        try:
            T = total_homology(C, interior)
        except TotalHomologyError as exc:
            case.check(False, f"interior={interior}: {exc}")
            continue
        case.check(is_ncomplex(T.complex, N - 1) is None, "total homology is not an (N-1)-complex")
        case.check(all(2 * j + p == n for n, comps in T.labels.items() for p, j in comps),
                   "component labels do not satisfy 2j + p = n")
    for p in range(2, N - 1):
        for j in range(C.lo - 1, C.hi + 1):
            case.check(bisequence_square_commutes(C, p, j), f"square at p={p}, j={j} does not commute")


def suite_reformulation(case: Case) -> None:
    C = random_sequence(case.rng, max_width=6, max_order=64, allow_free=True)
    case.record("sequence", dump_complex(C))
    for a in range(1, 5):
        for b in range(1, 6 - a):
            for j in C.positions:
                case.check(reformulation_check(C, a, b, j), f"reformulation fails at ({a},{b},{j})")


def suite_rn_preserves_qis(case: Case) -> None:
    f = random_quasi_iso(case.rng)
    case.record("morphism", dump_morphism(f))
    if not case.check(is_quasi_iso(f, 1, 1), "sampled morphism is not a quasi-isomorphism"):
        return
    for N in range(2, 6):
        g = r_n_expand_morphism(f, N)
        E = r_n_expand(f.source, N)
        case.check(all(E.obj(N * j) == f.source.obj(2 * j) for j in range(f.source.lo, f.source.hi + 1)),
                   f"(R_{N} C)_(Nj) differs from C_(2j)")
        for a in range(1, N):
            case.check(is_quasi_iso(g, a, N - a), f"R_{N} f is not an H^({a},{N - a}) quasi-isomorphism")


def suite_lower_bound(case: Case) -> None:
    rng = case.rng
    free = rng.random() < 0.2
    while True:
        X = random_model_group(rng, 64, allow_free=True).group
        if is_projective(X) == free:
            break
    N = rng.randint(2, 5)
    a = rng.randint(1, N - 1)
    b = N - a
    case.record("group", dump_group(X))
    case.record("a", a)
    case.record("b", b)
    rep = hh_projective_resolution(X, a, b)
    case.check(rep.ok, "resolution checks fail")
    if free:
        P = rep.resolution
        case.check(all(P.obj(i).is_trivial() for i in P.positions if i != 0),
                   "resolution of a free group is not concentrated at 0")
        case.check(rep.augmentation.component(0).is_isomorphism(), "augmentation is not an isomorphism")
    else:
        case.check(verify_lower_bound(rep, a, b), f"d^{a + b - 1} vanishes on the resolution")


def _elements(S, oracle) -> frozenset:
    return oracle.closure(oracle.encode(c) for c in S.gens.columns())


def suite_oracle(case: Case) -> None:
    rng = case.rng
    G1 = random_model_group(rng, 512, max_factors=4)
    G2 = random_model_group(rng, 512, max_factors=4)
    H = random_model_group(rng, 512, max_factors=4)
    f = GroupMorphism(G1.group, H.group, engine_matrix(random_model_matrix(rng, G1.moduli, H.moduli), G1, H))
    g = GroupMorphism(G2.group, H.group, engine_matrix(random_model_matrix(rng, G2.moduli, H.moduli), G2, H))
    case.record("f", {"source": dump_group(f.source), "target": dump_group(f.target),
                      "matrix": dump_matrix(f.matrix)})
    case.record("g", {"source": dump_group(g.source), "target": dump_group(g.target),
                      "matrix": dump_matrix(g.matrix)})
    o1, o2, oH = G1.oracle(), G2.oracle(), H.oracle()
    tf = FiniteMap.from_matrix(f.matrix, o1, oH)
    tg = FiniteMap.from_matrix(g.matrix, o2, oH)

    case.check(H.group.order == oH.order, "group order")
    case.check(brute_force_group(H.group).order == oH.order, "Smith-coordinate enumeration order")
    case.check(invariants_profile(*H.group.invariants) == quotient_profile(oH, frozenset(oH.elements()),
                                                                           frozenset({oH.zero})),
               "invariant factors")
    case.check(_elements(kernel(f), o1) == tf.kernel(), "kernel")
    S1, S2 = image(f), image(g)
    e1, e2 = _elements(S1, oH), _elements(S2, oH)
    case.check(e1 == tf.image() and e2 == tg.image(), "image")
    case.check(_elements(subgroup_sum(S1, S2), oH) == oH.closure(e1 | e2), "sum")
    case.check(_elements(subgroup_intersection(S1, S2), oH) == e1 & e2, "intersection")
    case.check(contains(S1, S2) == (e2 <= e1), "containment")
    case.check((S1 == S2) == (e1 == e2), "semantic equality")
    Q = subquotient(subgroup_sum(S1, S2), S2)
    case.check(invariants_profile(*Q.invariants) == quotient_profile(oH, oH.closure(e1 | e2), e2),
               "subquotient (S1 + S2) / S2")
    Q = subquotient(S1, subgroup_intersection(S1, S2))
    case.check(invariants_profile(*Q.invariants) == quotient_profile(oH, e1, e1 & e2),
               "subquotient S1 / (S1 n S2)")

    ms = random_model_sequence(rng, max_width=4, max_order=512)
    C = ms.sequence
    case.record("sequence", dump_complex(C))
    groups, maps = ms.oracle()
    for a in range(1, 4):
        for b in range(1, 4):
            for j in C.positions:
                G, K, I = sequence_homology(groups, maps, C.lo, a, b, j)
                got = homology(C, HomologyQuery(a, b, j)).invariants
                case.check(invariants_profile(*got) == quotient_profile(G, K, I),
                           f"homology ({a},{b}) at {j}")


@dataclass(frozen=True)
class Suite:
    name: str
    family: str
    run: Callable[[Case], None]
    description: str


SUITES = {s.name: s for s in [
    Suite("adjunction", "adjunction", suite_adjunction,
          "triangle identities, counit naturality and functoriality of kernel truncation"),
    Suite("factorization", "ncomplex", suite_factorization,
          "H^(a,b)_j against H^(1,1)_0 of the folded translate, all valid (a, b, j)"),
    Suite("reformulation", "sequence", suite_reformulation,
          "generalized homology against homology of the truncation, a + b <= 5"),
    Suite("m-complex", "ncomplex", suite_m_complex,
          "homology sequences satisfy d^min(a,b) = 0"),
    Suite("total", "total", suite_total,
          "total homology is an (N-1)-complex and the bisequence squares commute"),
    Suite("rn-preserves-qis", "qis", suite_rn_preserves_qis,
          "R_N sends quasi-isomorphisms of 2-complexes to H^(a,b) quasi-isomorphisms"),
    Suite("lower-bound", "resolution", suite_lower_bound,
          "expanded resolutions verify and need d^(a+b-1) != 0"),
    Suite("oracle", "oracle", suite_oracle,
          "lattice engine against element enumeration on groups of order <= 512"),
]}


def case_rng(family: str, seed: int, case: int) -> random.Random:
    return random.Random(f"{family}/{seed}/{case}")


def run_case(name: str, seed: int, index: int) -> Case:
    suite = SUITES[name]
    case = Case(case_rng(suite.family, seed, index))
    try:
        suite.run(case)
    except Exception as exc:  # a crash is a failed case, with the instance drawn so far
        tb = traceback.format_exception_only(type(exc), exc)[-1].strip()
        case.failures.append(f"exception: {tb}")
    return case


def run_suite(name: str, seed: int = 0, cases: int = 100, only_case: Optional[int] = None) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    indices = [only_case] if only_case is not None else range(cases)
    start = time.perf_counter()
    checks, failures = 0, []
    for i in indices:
        c = run_case(name, seed, i)
        checks += c.checks
        if c.failures:
            failures.append(CaseFailure(i, c.failures, c.instance))
    return SuiteResult(name, seed, len(indices), checks, time.perf_counter() - start, failures)
