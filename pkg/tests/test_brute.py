from collections import Counter

import pytest

from ncomplex.brute import (
    FiniteMap,
    GroupTooLargeError,
    brute_force_group,
    invariants_profile,
    quotient_profile,
)
from ncomplex.groups import PresentedGroup
from ncomplex.intmat import IntMatrix


def test_enumerated_cyclic_group():
    G = brute_force_group(PresentedGroup.cyclic(12))
    assert G.order == 12 and len(G.elements()) == 12
    assert Counter(G.element_order(x) for x in G.elements()) == invariants_profile(0, [12])


def test_profiles_separate_non_isomorphic_groups():
    assert invariants_profile(0, [2, 2]) != invariants_profile(0, [4])
    assert invariants_profile(0, [2, 6]) == invariants_profile(0, [2, 2, 3])


def test_quotient_profile():
    G = brute_force_group(PresentedGroup.cyclic(8))
    x2 = FiniteMap.from_matrix(IntMatrix.from_rows([[2]], 1), G, G)
    assert x2.is_homomorphism()
    K = frozenset(G.elements())
    assert quotient_profile(G, K, x2.image()) == invariants_profile(0, [2])
    with pytest.raises(ValueError):
        quotient_profile(G, x2.image(), K)


def test_bounds():
    with pytest.raises(GroupTooLargeError):
        brute_force_group(PresentedGroup.cyclic(1024))
    with pytest.raises(GroupTooLargeError):
        brute_force_group(PresentedGroup.free(1))
