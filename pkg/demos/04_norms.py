"""Norms of commutative rings from the trivial group to C_{p^n}.

N(Z) is the Burnside Green functor.  N(Z/m) is A modulo the Tambara ideal
generated by m at the bottom level.
"""

from greenhh import CyclicGroup
from greenhh.green import ring_Z, ring_Zmod
from greenhh.norm import norm_ring

for p, n in [(2, 3), (3, 2)]:
    R = norm_ring(ring_Z(), CyclicGroup(p ** n)).green
    print(f"N(Z) over C_{p ** n}: {R.mackey.ranks()}  unit A -> N(Z) iso: {R.unit_morphism().is_iso()}")

for p, n in [(2, 2), (3, 2)]:
    R = norm_ring(ring_Zmod(p), CyclicGroup(p ** n))
    print(f"N(F_{p}) over C_{p ** n}: {R.mackey.ranks()}")
    print("   " + "; ".join(R.provenance))
