"""Norms ``N_e^{C_{p^n}}`` of rings whose additive group is cyclic.

For ``Z`` the norm is the Burnside Green functor.  Every ring ``Z/m`` is a
quotient of ``Z``, and the norm, as a left adjoint on Tambara functors,
preserves that coequalizer, so ``N(Z/m)`` is ``A / J`` where ``J`` is the
Tambara ideal generated by ``m`` at the bottom level.

Tambara ideals are closed under restriction, transfer, multiplication by
``A`` and the norm differences ``N(a + x) - N(a)``.  Norms between adjacent
levels are computed in the table of marks: for ``x`` in ``A(C_{p^{k-1}})``,
``N(x)`` has mark ``phi_j(x)^p`` at ``C_{p^j}`` for ``j < k`` and mark
``phi_{k-1}(x)`` at ``C_{p^k}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .abelian import FGAbelianGroup, int_matrix, zeros
from .burnside import BurnsideElement, CyclicGroup, burnside_green
from .green import GreenFunctor, RingPresentation, green_quotient

__all__ = ["NormResult", "norm_ring", "norm_of_integer", "NormError"]


class NormError(ValueError):
    pass


@dataclass
class NormResult:
    green: GreenFunctor
    provenance: list[str] = field(default_factory=list)

    @property
    def mackey(self):
        return self.green.mackey


def _levels(p: int, n: int) -> list[int]:
    return [p ** k for k in range(n + 1)]


def _to_element(p: int, k: int, v) -> BurnsideElement:
    # basis of level k: point first, free orbit last
    return BurnsideElement.from_dict(CyclicGroup(p ** k), {p ** (k - i): int(v[i]) for i in range(k + 1)})


def _marks(p: int, k: int, v) -> list[int]:
    m = _to_element(p, k, v).marks()
    return [m[p ** j] for j in range(k + 1)]


def _from_marks(p: int, k: int, marks: list[int]) -> np.ndarray:
    """Orbit-basis coordinates of the element with the given marks."""
    # triangular: phi_{C_{p^j}}[G/C_{p^i}] = p^{k-i} if i >= j else 0
    coeff = [0] * (k + 1)  # indexed by i = stabilizer exponent
    rest = list(marks)
    for i in range(k, -1, -1):
        q, r = divmod(rest[i], p ** (k - i))
        if r:
            raise NormError("marks do not come from a virtual G-set")
        coeff[i] = q
        for j in range(i + 1):
            rest[j] -= q * p ** (k - i)
    out = zeros(k + 1, 1)
    for i in range(k + 1):
        out[k - i, 0] = coeff[i]
    return out


def norm_of_integer(p: int, k: int, v) -> np.ndarray:
    """``N_{C_{p^{k-1}}}^{C_{p^k}}`` of an element of ``A(C_{p^{k-1}})``."""
    m = _marks(p, k - 1, v)
    return _from_marks(p, k, [x ** p for x in m] + [m[-1]])


def _span_contains(k: int, gens: np.ndarray, v: np.ndarray) -> bool:
    return FGAbelianGroup(k + 1, gens).contains_all(v)


def _tambara_ideal(p: int, n: int, m: int, G: GreenFunctor) -> dict[int, np.ndarray]:
    mk = G.mackey
    gens = {k: zeros(k + 1, 0) for k in range(n + 1)}
    gens[0] = int_matrix([[m]])

    def add(k, vecs) -> bool:
        grew = False
        for j in range(vecs.shape[1]):
            v = vecs[:, j:j + 1]
            if not v.any() or _span_contains(k, gens[k], v):
                continue
            gens[k] = np.concatenate([gens[k], v], axis=1)
            grew = True
        return grew

    changed = True
    while changed:
        changed = False
        for k in range(n + 1):
            g = gens[k]
            if not g.shape[1]:
                continue
            # ideal under A(k)
            prods = np.concatenate([G.mult[k] @ np.kron(np.eye(k + 1, dtype=object)[:, [i]], g)
                                    for i in range(k + 1)], axis=1)
            changed |= add(k, prods)
            if k:
                changed |= add(k - 1, mk.res[k].matrix @ gens[k])
            if k < n:
                changed |= add(k + 1, mk.tr[k + 1].matrix @ gens[k])
                # N(a + x) - N(a) over a grid that spans all values (degree p in a)
                diffs = []
                for x in gens[k].T:
                    for a in itertools.product(range(p + 1), repeat=k + 1):
                        a = np.array(a, dtype=object)
                        diffs.append(norm_of_integer(p, k + 1, a + x) - norm_of_integer(p, k + 1, a))
                if diffs:
                    changed |= add(k + 1, np.concatenate(diffs, axis=1))
    return gens


def _cyclic_ring_modulus(r: RingPresentation) -> int:
    inv = r.group.invariants
    rank, tors = inv
    if rank == 1 and not tors:
        m = 0
    elif rank == 0 and len(tors) == 1:
        m = tors[0]
    elif rank == 0 and not tors:
        m = 1
    else:
        raise NormError(f"norm implemented only for quotients of Z; got additive group {inv}")
    if m == 1:
        return 1
    if r.characteristic() != m:
        raise NormError("unit does not generate the ring")
    return m


def norm_ring(r: RingPresentation, group: CyclicGroup) -> NormResult:
    """``N_e^G r`` for ``G`` a cyclic p-group and ``r`` a quotient of ``Z``."""
    if not r.is_commutative():
        raise NormError("norm needs a commutative ring")
    pk = group.prime_power
    if pk is None:
        raise NormError(f"{group} is not a cyclic p-group")
    p, n = pk
    if n == 0:
        from .green import green_from_ring

        return NormResult(green_from_ring(r), ["norm along the identity"])
    m = _cyclic_ring_modulus(r)
    A = burnside_green(group)
    prov = [f"A[{group}] = N_e^{group}(Z), the Burnside Green functor"]
    if m == 0:
        return NormResult(A, prov)
    gens = _tambara_ideal(p, n, m, A) if n else {0: int_matrix([[m]])}
    prov.append(f"quotient by the Tambara ideal generated by {m} at the bottom level")
    q, _ = green_quotient(A, gens, name=f"N_e^{group}({r.name or f'Z/{m}'})")
    return NormResult(q, prov)
