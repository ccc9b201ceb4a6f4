"""Two 3-complexes that one homology functor separates and another does not.

Z/8 with d = x2 and Z/2 with d = 0 have the same H^(2,2) but different
H^(2,1). The inclusion lattice at a middle position shows why: on Z/8 the
kernels and images collapse into a chain.

    python demos/two_three_complexes.py
"""

from ncomplex import HomologyQuery, homology, inclusion_lattice
from ncomplex.cli import fixture_path
from ncomplex.groups import describe_invariants
from ncomplex.io import read_complex

z8 = read_complex(fixture_path("z8_times2.json"))
z2 = read_complex(fixture_path("z2_zero.json"))

print("position   H22(Z/8)  H22(Z/2)  H21(Z/8)  H21(Z/2)")
for j in z8.positions:
    row = []
    for a, b in ((2, 2), (2, 1)):
        for C in (z8, z2):
            v = homology(C, HomologyQuery(a, b, j))
            row.append(describe_invariants(*v.invariants) + ("" if v.interior else "*"))
    print(f"{j:8d}   " + "".join(f"{x:10s}" for x in row))
print("(* = value depends on the zero padding of the window)")

L = inclusion_lattice(z8, 3)
print("\nsubgroups of C_3 = Z/8:")
for name, inv in L.invariants.items():
    print(f"  {name:8s} ~ {describe_invariants(*inv)}")
print("equal pairs:", L.equal_nodes())
print(L.to_dot())
