import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from ncomplex.brute import FiniteMap, brute_force_group, quotient_profile, invariants_profile
from ncomplex.groups import (
    GroupMorphism,
    NotInducedError,
    PresentedGroup,
    Subgroup,
    canonical_invariants,
    check_morphism,
    contains,
    direct_sum,
    image,
    induced_map,
    kernel,
    subgroup_intersection,
    subgroup_sum,
    subquotient,
)
from ncomplex.intmat import IntMatrix
from ncomplex.sampling import engine_matrix, random_model_group, random_model_matrix

Z8 = PresentedGroup.cyclic(8)
TIMES2 = GroupMorphism(Z8, Z8, IntMatrix.from_rows([[2]]))


def sub(G, *vecs):
    return Subgroup.of(G, IntMatrix.from_columns([list(v) for v in vecs], G.generators))


def residues(S, m=8):
    """Elements of a subgroup of Z/m, by enumeration."""
    gens = [c[0] % m for c in S.gens.columns()]
    return {sum(k * g for k, g in zip(ks, gens)) % m
            for ks in product(range(m), repeat=len(gens))}


def test_canonical_invariants():
    assert canonical_invariants(Z8) == (0, (8,))
    assert canonical_invariants(PresentedGroup(2, IntMatrix.from_rows([[6], [4]]))) == (1, (2,))
    assert canonical_invariants(PresentedGroup.free(3)) == (3, ())


def test_check_morphism():
    assert check_morphism(TIMES2)
    Z2, Z4 = PresentedGroup.cyclic(2), PresentedGroup.cyclic(4)
    assert not check_morphism(GroupMorphism(Z2, Z4, IntMatrix.identity(1)))
    assert check_morphism(GroupMorphism.zero(Z4, Z2))


def test_kernel_image_z8():
    assert residues(kernel(TIMES2)) == {x for x in range(8) if 2 * x % 8 == 0} == {0, 4}
    assert residues(image(TIMES2)) == {2 * x % 8 for x in range(8)} == {0, 2, 4, 6}
    assert image(TIMES2).as_group().invariants == (0, (4,))
    ident = GroupMorphism.identity(Z8)
    assert kernel(ident).is_trivial()
    assert image(ident) == Subgroup.whole(Z8)
    assert kernel(GroupMorphism.zero(Z8, Z8)) == Subgroup.whole(Z8)
    assert image(GroupMorphism.zero(Z8, Z8)).is_trivial()


def test_sum_intersection_containment_z8():
    S4, S2 = sub(Z8, [4]), sub(Z8, [2])
    zero = Subgroup.trivial(Z8)
    assert subgroup_sum(S4, S2) == S2 and residues(subgroup_sum(S4, S2)) == {0, 2, 4, 6}
    assert subgroup_intersection(S4, S2) == S4
    assert subgroup_sum(S4, zero) == S4 and subgroup_sum(S4, S4) == S4
    assert subgroup_intersection(S4, Subgroup.whole(Z8)) == S4
    assert subgroup_intersection(S4, zero) == zero
    assert contains(S2, S4) and not contains(S4, S2)
    assert contains(Subgroup.whole(Z8), S2)


def test_ambient_mismatch():
    with pytest.raises(ValueError):
        subgroup_sum(Subgroup.whole(Z8), Subgroup.whole(PresentedGroup.cyclic(4)))


def test_subquotients_z8():
    S4, S2 = sub(Z8, [4]), sub(Z8, [2])
    assert subquotient(S2, S4).invariants == (0, (2,))
    assert subquotient(S2, S2).quotient.is_trivial()
    assert subquotient(S2, Subgroup.trivial(Z8)).invariants == (0, (4,))
    with pytest.raises(ValueError):
        subquotient(S4, S2)


def test_induced_map_z8():
    Q = subquotient(sub(Z8, [2]), sub(Z8, [4]))
    assert induced_map(TIMES2, Q, Q).is_zero()
    ident = induced_map(GroupMorphism.identity(Z8), Q, Q)
    assert ident == GroupMorphism.identity(Q.quotient)
    assert induced_map(GroupMorphism.zero(Z8, Z8), Q, Q).is_zero()
    # {0,2,4,6} does not land inside {0,4}
    with pytest.raises(NotInducedError):
        induced_map(GroupMorphism.identity(Z8), Q, subquotient(sub(Z8, [4]), Subgroup.trivial(Z8)))


def test_brute_force_orders():
    assert brute_force_group(Z8).order == 8
    assert brute_force_group(direct_sum(PresentedGroup.cyclic(2), PresentedGroup.cyclic(4))).order == 8
    assert brute_force_group(PresentedGroup(2, IntMatrix.from_rows([[2, 0], [0, 4]]))).order == 8


def _random_subgroups(seed):
    rng = random.Random(seed)
    H = random_model_group(rng, 128)
    maps = []
    for _ in range(3):
        G = random_model_group(rng, 64)
        maps.append(GroupMorphism(G.group, H.group,
                                  engine_matrix(random_model_matrix(rng, G.moduli, H.moduli), G, H)))
    return H, [image(f) for f in maps]


@given(st.integers(0, 10 ** 9))
def test_contains_is_partial_order(seed):
    H, (A, B, C) = _random_subgroups(seed)
    assert contains(A, A)
    if contains(A, B) and contains(B, A):
        assert A == B
    if contains(A, B) and contains(B, C):
        assert contains(A, C)
    assert contains(subgroup_sum(A, B), A) and contains(A, subgroup_intersection(A, B))


@given(st.integers(0, 10 ** 9))
def test_subquotient_order_is_index(seed):
    H, (A, B, _) = _random_subgroups(seed)
    I = subgroup_intersection(A, B)
    Q = subquotient(A, I)
    assert Q.quotient.order * I.order == A.order
    oH = H.oracle()
    eA = oH.closure(oH.encode(c) for c in A.gens.columns())
    eI = oH.closure(oH.encode(c) for c in I.gens.columns())
    assert len(eA) == A.order and len(eI) == I.order
    assert quotient_profile(oH, eA, eI) == invariants_profile(*Q.invariants)


@given(st.integers(0, 10 ** 9))
def test_induced_map_respects_composition(seed):
    rng = random.Random(seed)
    G1, G2, G3 = (random_model_group(rng, 64) for _ in range(3))
    f = GroupMorphism(G1.group, G2.group, engine_matrix(random_model_matrix(rng, G1.moduli, G2.moduli), G1, G2))
    g = GroupMorphism(G2.group, G3.group, engine_matrix(random_model_matrix(rng, G2.moduli, G3.moduli), G2, G3))
    # pick subquotients that f and g are guaranteed to respect
    q1 = subquotient(Subgroup.whole(G1.group), kernel(g @ f))
    q2 = subquotient(Subgroup.whole(G2.group), kernel(g))
    q3 = subquotient(Subgroup.whole(G3.group), Subgroup.trivial(G3.group))
    assert induced_map(g @ f, q1, q3) == induced_map(g, q2, q3) @ induced_map(f, q1, q2)
    assert induced_map(g @ f, q1, q3).is_injective()


@given(st.integers(0, 10 ** 9))
def test_morphism_semantics_match_tables(seed):
    rng = random.Random(seed)
    G, H = random_model_group(rng, 64), random_model_group(rng, 64)
    f = GroupMorphism(G.group, H.group, engine_matrix(random_model_matrix(rng, G.moduli, H.moduli), G, H))
    assert check_morphism(f)
    oG, oH = G.oracle(), H.oracle()
    table = FiniteMap.from_matrix(f.matrix, oG, oH)
    assert table.is_homomorphism()
    assert f.is_injective() == (len(table.kernel()) == 1)
    assert f.is_surjective() == (len(table.image()) == oH.order)
