"""Projective resolutions that detect H^(a,b) and how long they must be.

Resolving Z/m with respect to H^(a,b) stretches the classical resolution
Z --m--> Z into a + b - 1 copies of Z joined by identities. The composite
d^(a+b-1) is still multiplication by m, so the resolution is never an
(a+b-1)-complex.

    python demos/resolutions.py
"""

from ncomplex import PresentedGroup, hh_projective_resolution, power_differential, verify_lower_bound

for m, a, b in ((6, 2, 1), (8, 3, 2), (5, 1, 1)):
    r = hh_projective_resolution(PresentedGroup.cyclic(m), a, b)
    P = r.resolution
    maps = " ".join(f"{d.matrix[0, 0]}" for d in P.differentials)
    print(f"Z/{m}, (a,b)=({a},{b}): window {P.window}, differentials {maps}")
    k = a + b - 1
    d = power_differential(P, P.lo, k)
    print(f"  d^{k} from {P.lo}: x{d.matrix[0, 0]}   checks ok={r.ok}   lower bound={verify_lower_bound(r, a, b)}")

# a free group needs nothing beyond itself
free = hh_projective_resolution(PresentedGroup.free(2), 2, 2)
print("Z^2:", free.resolution.window, "ok =", free.ok, "max power =", free.max_nonzero_power)
