"""The Burnside Mackey functor and the axiom checker.

Level k of A for C_{p^n} is the Burnside ring of C_{p^k}, free of rank k+1,
listed from the point [C/C] down to the free orbit [C/e].
"""

from greenhh import CyclicGroup, burnside_mackey, check_axioms
from greenhh.abelian import FGAbelianGroup
from greenhh.burnside import BurnsideElement
from greenhh.mackey import MackeyFunctor

A = burnside_mackey(CyclicGroup(9))
for k, lv in enumerate(A.levels):
    print(f"A(C9/C{3 ** k}) = Z^{lv.free_rank}")
print("tr from level 0 to 1:", A.tr[1].matrix.tolist())
print("res from level 1 to 0:", A.res[1].matrix.tolist())
print("axioms:", check_axioms(A))

free = BurnsideElement.orbit(CyclicGroup(9), 1)
print("[C9/e]^2 =", free * free)

# a diagram that is not a Mackey functor: constant Z with zero transfer
Z = FGAbelianGroup.free(1)
bad = MackeyFunctor(CyclicGroup(3), [Z, Z], {1: [[1]]}, {1: [[0]]}, check=False)
print("constant Z with tr = 0:", check_axioms(bad))
