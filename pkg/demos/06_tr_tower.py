"""Algebraic restriction and the TR tower.

The restriction is a chain map between the top levels of consecutive nerves,
built from Phi^{C_p} of the norm.  For Z it is the coordinate quotient
Z^{n+1} -> Z^n in degree 0.
"""

from greenhh.cyclotomic import tr_tower
from greenhh.green import ring_Z, ring_Zmod

for ring, p, degree in [(ring_Z(), 2, 0), (ring_Z(), 3, 1), (ring_Zmod(2), 2, 0), (ring_Zmod(3), 3, 0)]:
    T = tr_tower(ring, p, 3, degree)
    stages = [g.invariants for g in T.stage_groups]
    print(f"{ring.name} p={p} degree {degree}: stages {stages}")
    print(f"   stage 3 -> 2: {T.transition_maps[3].matrix.tolist()}   limit: {T.classification}")
