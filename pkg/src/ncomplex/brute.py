"""Element-by-element computations on small finite abelian groups.

These are test oracles: every subgroup is an explicit frozenset of
elements and every map an explicit dict, so nothing here shares code with
the lattice-based engine beyond the encoding of elements.
"""

from __future__ import annotations

from collections import Counter
from itertools import product
from math import gcd, lcm, prod
from typing import Iterable, Sequence

from .groups import PresentedGroup
from .intmat import IntMatrix, smith_normal_form, unimodular_inverse

DEFAULT_BOUND = 512

Element = tuple[int, ...]


class GroupTooLargeError(ValueError):
    pass


class FiniteGroup:
    """Z/m_1 x ... x Z/m_k with explicit coordinates.

    ``to_model`` sends a generator vector of the presented group to model
    coordinates (before reduction); ``from_model`` sends model coordinates
    back to a representative generator vector.
    """

    def __init__(self, moduli: Sequence[int], to_model: IntMatrix, from_model: IntMatrix,
                 bound: int = DEFAULT_BOUND):
        if any(m <= 0 for m in moduli):
            raise GroupTooLargeError("infinite group")
        if prod(moduli) > bound:
            raise GroupTooLargeError(f"group of order {prod(moduli)} exceeds bound {bound}")
        self.moduli = tuple(moduli)
        self.to_model = to_model
        self.from_model = from_model

    @property
    def order(self) -> int:
        return prod(self.moduli)

    @property
    def zero(self) -> Element:
        return (0,) * len(self.moduli)

    def elements(self) -> list[Element]:
        return list(product(*(range(m) for m in self.moduli)))

    def reduce(self, y: Iterable[int]) -> Element:
        return tuple(int(v) % m for v, m in zip(y, self.moduli))

    def encode(self, v: Sequence[int]) -> Element:
        return self.reduce(self.to_model.apply(v))

    def decode(self, y: Element) -> tuple[int, ...]:
        return self.from_model.apply(y)

    def add(self, x: Element, y: Element) -> Element:
        return tuple((a + b) % m for a, b, m in zip(x, y, self.moduli))

    def scale(self, k: int, x: Element) -> Element:
        return tuple((k * a) % m for a, m in zip(x, self.moduli))

    def closure(self, gens: Iterable[Element]) -> frozenset[Element]:
        """The subgroup generated by ``gens``."""
        gens = [g for g in set(gens) if any(g)]
        seen = {self.zero}
        frontier = [self.zero]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.add(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def element_order(self, x: Element) -> int:
        return lcm(*(m // gcd(v, m) for v, m in zip(x, self.moduli)))


def brute_force_group(G: PresentedGroup, bound: int = DEFAULT_BOUND) -> FiniteGroup:
    """Enumerate G through its Smith form coordinates."""
    U, D, _ = smith_normal_form(G.relations)
    n = G.generators
    diag = [D[i, i] if i < min(D.shape) else 0 for i in range(n)]
    if any(d == 0 for d in diag):
        raise GroupTooLargeError("infinite group")
    keep = [i for i, d in enumerate(diag) if d != 1]
    to_model = U.select_rows(keep)
    from_model = unimodular_inverse(U).select_columns(keep)
    return FiniteGroup([diag[i] for i in keep], to_model, from_model, bound)


def model_group(moduli: Sequence[int], to_model: IntMatrix, from_model: IntMatrix,
                bound: int = DEFAULT_BOUND) -> FiniteGroup:
    """A group whose coordinate change is known in advance (no Smith form involved)."""
    return FiniteGroup(moduli, to_model, from_model, bound)


class FiniteMap:
    """A homomorphism tabulated on every element of its source."""

    def __init__(self, source: FiniteGroup, target: FiniteGroup, table: dict[Element, Element]):
        self.source = source
        self.target = target
        self.table = table

    @classmethod
    def from_matrix(cls, M: IntMatrix, source: FiniteGroup, target: FiniteGroup) -> "FiniteMap":
        return cls(source, target,
                   {x: target.encode(M.apply(source.decode(x))) for x in source.elements()})

    @classmethod
    def identity(cls, G: FiniteGroup) -> "FiniteMap":
        return cls(G, G, {x: x for x in G.elements()})

    @classmethod
    def zero(cls, source: FiniteGroup, target: FiniteGroup) -> "FiniteMap":
        return cls(source, target, {x: target.zero for x in source.elements()})

    def __call__(self, x: Element) -> Element:
        return self.table[x]

    def __matmul__(self, other: "FiniteMap") -> "FiniteMap":
        return FiniteMap(other.source, self.target, {x: self.table[y] for x, y in other.table.items()})

    def kernel(self) -> frozenset[Element]:
        z = self.target.zero
        return frozenset(x for x, y in self.table.items() if y == z)

    def image(self) -> frozenset[Element]:
        return frozenset(self.table.values())

    def is_homomorphism(self) -> bool:
        S = self.source
        els = S.elements()
        return all(self.table[S.add(x, y)] == self.target.add(self.table[x], self.table[y])
                   for x in els for y in els)


def quotient_profile(G: FiniteGroup, K: frozenset, I: frozenset) -> Counter:
    """Multiset of element orders of K / I; it pins down the isomorphism type."""
    if not I <= K:
        raise ValueError("denominator is not inside numerator")
    orders = Counter()
    for x in K:
        # the order modulo I divides the order in G
        n = G.element_order(x)
        k = next(k for k in range(1, n + 1) if n % k == 0 and G.scale(k, x) in I)
        orders[k] += 1
    return Counter({k: c // len(I) for k, c in orders.items()})


def invariants_profile(free_rank: int, factors: Sequence[int]) -> Counter:
    """Element-order multiset of Z/f_1 x ... from its invariant factors."""
    if free_rank:
        raise GroupTooLargeError("infinite group")
    G = FiniteGroup(list(factors), IntMatrix.identity(len(factors)),
                    IntMatrix.identity(len(factors)), bound=10 ** 6)
    return Counter(G.element_order(x) for x in G.elements())


def sequence_homology(groups: Sequence[FiniteGroup], maps: Sequence[FiniteMap],
                      lo: int, a: int, b: int, j: int) -> tuple[FiniteGroup, frozenset, frozenset]:
    """ker d^a / (ker d^a  intersect  im d^b) at position j, by enumeration.

    ``groups[k]`` sits at position lo + k and ``maps[k]`` goes from lo + k to lo + k + 1.
    """
    hi = lo + len(groups) - 1

    def power(i: int, k: int):
        # returns a function on elements of position i, or None for the zero map
        if not (lo <= i <= hi and lo <= i + k <= hi):
            return None
        f = FiniteMap.identity(groups[i - lo])
        for t in range(i, i + k):
            f = maps[t - lo] @ f
        return f

    if not lo <= j <= hi:
        empty = FiniteGroup([], IntMatrix.zeros(0, 0), IntMatrix.zeros(0, 0))
        z = frozenset({()})
        return empty, z, z
    G = groups[j - lo]
    da = power(j, a)
    K = da.kernel() if da is not None else frozenset(G.elements())
    db = power(j - b, b)
    im = db.image() if db is not None else frozenset({G.zero})
    return G, K, K & im
