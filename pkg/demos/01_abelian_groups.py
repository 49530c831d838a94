"""Finitely generated abelian groups through Smith normal form.

Every quotient in the package ends up here: a presentation goes in, and
canonical invariants (free rank, torsion d1 | d2 | ...) come out.
"""

from greenhh.abelian import ChainComplexZ, FGAbelianGroup, GroupHom, smith_normal_form

U, D, V = smith_normal_form([[2, 4], [6, 8]])
print("SNF of [[2,4],[6,8]]:", [int(D[i, i]) for i in range(2)])

G = FGAbelianGroup(2, [[2, 6], [4, 8]])  # columns are relations
print("Z^2 / <(2,4),(6,8)> has invariants", G.invariants)

Z = FGAbelianGroup.free(1)
times5 = GroupHom(Z, Z, [[5]])
print("coker(5: Z -> Z) =", times5.cokernel()[0].invariants)

# 0 <- Z <-2- Z <-0- Z : H0 = Z/2, H1 = 0, H2 = Z
C = ChainComplexZ([Z, Z, Z], {1: GroupHom(Z, Z, [[2]]), 2: GroupHom(Z, Z, [[0]])})
print("homology:", [C.homology(i).invariants for i in range(3)])
