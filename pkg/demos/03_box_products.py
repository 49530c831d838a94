"""Box products as explicit coends, checked against the inductive model.

The Burnside functor is the unit: the canonical map A box M -> M is an
isomorphism, and box(A, A) has the same levels as A.
"""

from greenhh import CyclicGroup, burnside_mackey
from greenhh.box import box, box_inductive_levels, symmetry_iso, unit_iso
from greenhh.green import ring_Zmod
from greenhh.norm import norm_ring

g = CyclicGroup(4)
A = burnside_mackey(g)
N = norm_ring(ring_Zmod(2), g).mackey

print("A box A levels:", box(A, A).mackey.ranks())
B, phi = unit_iso(N)
print("A box N(F2) -> N(F2) is an isomorphism:", phi.is_iso())

NN = box(N, N).mackey
print("N(F2) box N(F2):", NN.ranks())
print("inductive model:", [lv.invariants for lv in box_inductive_levels(N, N)])
print("swap is an isomorphism:", symmetry_iso(A, N)[2].is_iso())
