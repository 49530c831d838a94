"""The E2-term for MU_R and its collapse.

Koszul Tor turns each polynomial generator b_i of degree i rho into an
exterior class z_i in filtration 1.  Everything sits in filtration <= 1, so
no differential d^r (r >= 2) can hit a generator.
"""

from collections import Counter

from greenhh.graded import (
    collapse_check,
    e2_presentation_mur,
    hochschild_ranks_polynomial,
    monomial_basis,
)

E2 = e2_presentation_mur(3, 6)
for g in E2.generators:
    print(f"{g.name}: kind {g.kind}, filtration {g.filtration}, degree {g.degree}")

basis = monomial_basis(E2, 6)
counts = Counter((s, d.rho_multiple) for _, s, d in basis)
print(len(basis), "monomials up to 6 rho")
print("agrees with the Hochschild complex of F2[b1,b2,b3]:",
      dict(counts) == hochschild_ranks_polynomial([1, 2, 3], 6))
print(collapse_check(E2).statement)
