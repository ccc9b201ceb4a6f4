"""Total homology, and expanding quasi-isomorphisms of ordinary complexes.

First the total homology of the Z/2 complex with zero differential: every
Kapranov homology group is Z/2 and the assembled differential alternates
between the identity and zero, giving a 2-complex.

Then a quasi-isomorphism of 2-complexes, the projection from 0 -> Z --2--> Z
onto Z/2, is expanded with R_N and checked against every H^(a,b).

    python demos/total_and_expansion.py
"""

from ncomplex import (
    PresentedGroup,
    is_ncomplex,
    is_quasi_iso,
    make_seq_morphism,
    make_sequence,
    r_n_expand_morphism,
    total_homology,
    validate_ncomplex,
)
from ncomplex.cli import fixture_path
from ncomplex.groups import describe_invariants
from ncomplex.intmat import IntMatrix
from ncomplex.io import read_complex

z2 = read_complex(fixture_path("z2_zero.json"))
T = total_homology(z2)
print(f"total homology of Z/2 (d = 0), a {T.complex.n}-complex:")
for n in T.complex.positions:
    d = T.complex.diff(n) if n < T.complex.hi else None
    kind = "" if d is None else ("  d = iso" if d.is_isomorphism() else "  d = 0")
    print(f"  {n:3d}: {describe_invariants(*T.complex.obj(n).invariants):5s} from {T.labels[n]}{kind}")
print("certified:", is_ncomplex(T.complex, T.complex.n) is None)

Z = PresentedGroup.free(1)
C = validate_ncomplex(make_sequence((-1, 0), [Z, Z], [[[2]]]), 2)
D = make_sequence((-1, 0), [PresentedGroup.zero(), PresentedGroup.cyclic(2)], [IntMatrix.zeros(1, 0)])
f = make_seq_morphism(C, D, {0: [[1]]})
print("\nprojection is an H^(1,1) quasi-isomorphism:", is_quasi_iso(f, 1, 1))
for N in range(2, 6):
    g = r_n_expand_morphism(f, N)
    ok = all(is_quasi_iso(g, a, N - a) for a in range(1, N))
    print(f"  R_{N}: source window {g.source.window}, H^(a,{N}-a) quasi-iso for all a: {ok}")
