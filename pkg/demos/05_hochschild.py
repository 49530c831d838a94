"""Twisted Hochschild homology of Green functors.

For Z the norm is the Burnside functor, every face of the twisted nerve is an
isomorphism, and homology is A in degree 0 and zero above.  For a
trivial-group ring the engine agrees with the classical bar complex.
"""

from greenhh import CyclicGroup
from greenhh.green import green_from_ring, ring_truncated_poly, ring_Z, ring_Zmod
from greenhh.hochschild import classical_hochschild, hh_relative, hh_twisted

for i, h in enumerate(hh_relative(ring_Z(), CyclicGroup(9), 3)):
    print(f"HH_{i}^(C9)(Z):", h.ranks())

for i, h in enumerate(hh_relative(ring_Zmod(2), CyclicGroup(2), 2)):
    print(f"HH_{i}^(C2)(F2):", h.ranks())

r = ring_truncated_poly(2, 2)
print("F2[x]/x^2 via nerve:    ", [h.levels[0].invariants for h in hh_twisted(green_from_ring(r), 3)])
print("F2[x]/x^2 via classical:", [g.invariants for g in classical_hochschild(r, 3)])
