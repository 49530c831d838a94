"""Green functors, their (bi)modules, twisting, and ring presentations.

Multiplication is stored as a Dress pairing: at each level ``k`` a matrix
``mult[k]`` from the tensor square of the level (generator pair ``(i, j)`` is
column ``i * ngens + j``) back to the level.  The Mackey morphism out of the
box product is assembled from this data by :mod:`greenhh.box`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .abelian import FGAbelianGroup, GroupHom, identity, int_matrix, tensor, zeros
from .burnside import CyclicGroup
from .mackey import MackeyError, MackeyFunctor, MackeyMorphism

__all__ = [
    "GreenFunctor",
    "GreenModule",
    "RingPresentation",
    "TwistTag",
    "green_from_ring",
    "green_quotient",
    "twist",
    "weyl_action_morphism",
    "ring_Z",
    "ring_Zmod",
    "ring_truncated_poly",
]


def _pairing_matrix(m, n_out: int, n_a: int, n_b: int) -> np.ndarray:
    if isinstance(m, np.ndarray) and m.ndim == 2:
        return int_matrix(m, n_out, n_a * n_b)
    arr = np.array(m, dtype=object)
    if arr.size == 0:
        return zeros(n_out, n_a * n_b)
    if arr.ndim == 3:
        arr = arr.reshape(n_out, n_a * n_b)
    return int_matrix(arr, n_out, n_a * n_b)


def pair(mu: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Apply a pairing matrix to column vectors (or matrices, columnwise)."""
    a = a.reshape(-1, 1) if a.ndim == 1 else a
    b = b.reshape(-1, 1) if b.ndim == 1 else b
    return mu @ np.kron(a, b)


def _col(v) -> np.ndarray:
    return int_matrix(np.array(v, dtype=object).reshape(-1, 1))


class GreenFunctor:
    """A Mackey functor with a unital, associative, Frobenius-compatible product."""

    def __init__(self, mackey: MackeyFunctor, mult, unit, check: bool = True, name: str = ""):
        self.mackey = mackey
        self.name = name or mackey.name
        L = mackey.levels
        self.mult = {k: _pairing_matrix(mult[k], L[k].ngens, L[k].ngens, L[k].ngens)
                     for k in range(mackey.height + 1)}
        self.unit = {k: L[k].reduce(_col(unit[k])) for k in range(mackey.height + 1)}
        if check:
            bad = self.failures()
            if bad:
                raise MackeyError("not a Green functor: " + "; ".join(bad))

    @property
    def group(self) -> CyclicGroup:
        return self.mackey.group

    @property
    def height(self) -> int:
        return self.mackey.height

    def product(self, k: int, a, b) -> np.ndarray:
        return self.mackey.levels[k].reduce(pair(self.mult[k], _col(a), _col(b)))

    def is_commutative(self) -> bool:
        for k, g in enumerate(self.mackey.levels):
            n = g.ngens
            for i in range(n):
                for j in range(n):
                    if not g.contains_all(self.mult[k][:, [i * n + j]] - self.mult[k][:, [j * n + i]]):
                        return False
        return True

    def failures(self) -> list[str]:
        return _pairing_failures(self.mackey, self.mackey, self.mackey, self.mult, self.unit,
                                 associative=True)

    def as_module(self) -> "GreenModule":
        """R as a bimodule over itself."""
        return GreenModule(self, self.mackey, self.mult, self.mult, check=False)

    def unit_morphism(self) -> MackeyMorphism:
        """The unit ``A -> R``: ``[C_{p^k}/C_{p^j}] -> tr_j^k res_j^k 1``."""
        from .burnside import burnside_mackey

        A = burnside_mackey(self.group)
        m = self.mackey
        maps = {}
        for k in range(m.height + 1):
            cols = [(m.tr_between(j, k) @ m.res_between(k, j)).matrix @ self.unit[k] for j in range(k, -1, -1)]
            maps[k] = np.concatenate(cols, axis=1)
        return MackeyMorphism(A, m, maps)

    def mult_morphism(self):
        """Multiplication as a Mackey morphism ``R box R -> R``."""
        from .box import MultiBox

        B = MultiBox([self.mackey, self.mackey])
        return B, B.map_out(self.mackey, lambda k, idx: self.mult[k][:, [idx[0] * self.mackey.levels[k].ngens + idx[1]]])

    def __repr__(self) -> str:
        return f"<GreenFunctor {self.name} over {self.group}>"


def _pairing_failures(R: MackeyFunctor, A: MackeyFunctor, B: MackeyFunctor, mu, unit=None,
                      associative=False, which="pairing") -> list[str]:
    """Check a pairing A(k) x B(k) -> R(k) against the Mackey structure."""
    out = []
    H = R.height
    for k in range(H + 1):
        T = tensor(A.levels[k], B.levels[k])
        if T.relations.shape[1] and not R.levels[k].contains_all(mu[k] @ T.relations):
            out.append(f"level {k}: {which} ignores relations")
        wa, wb, wr = A.weyl[k].matrix, B.weyl[k].matrix, R.weyl[k].matrix
        if not R.levels[k].contains_all(wr @ mu[k] - mu[k] @ np.kron(wa, wb)):
            out.append(f"level {k}: {which} not Weyl-equivariant")
    for k in range(1, H + 1):
        ra, rb, rr = A.res[k].matrix, B.res[k].matrix, R.res[k].matrix
        if not R.levels[k - 1].contains_all(rr @ mu[k] - mu[k - 1] @ np.kron(ra, rb)):
            out.append(f"edge {k}: res not multiplicative")
        ta, tb, tr = A.tr[k].matrix, B.tr[k].matrix, R.tr[k].matrix
        na, nb = A.levels[k - 1].ngens, B.levels[k].ngens
        # tr(x) * b = tr(x * res b)
        lhs = mu[k] @ np.kron(ta, identity(nb))
        rhs = tr @ mu[k - 1] @ np.kron(identity(na), rb)
        if not R.levels[k].contains_all(lhs - rhs):
            out.append(f"edge {k}: Frobenius tr(x)*b != tr(x*res b)")
        na2, nb2 = A.levels[k].ngens, B.levels[k - 1].ngens
        lhs = mu[k] @ np.kron(identity(na2), tb)
        rhs = tr @ mu[k - 1] @ np.kron(ra, identity(nb2))
        if not R.levels[k].contains_all(lhs - rhs):
            out.append(f"edge {k}: Frobenius a*tr(y) != tr(res a*y)")
    if associative:
        for k in range(H + 1):
            n = R.levels[k].ngens
            I = identity(n)
            lhs = mu[k] @ np.kron(mu[k], I)
            rhs = mu[k] @ np.kron(I, mu[k])
            if not R.levels[k].contains_all(lhs - rhs):
                out.append(f"level {k}: not associative")
            if unit is not None:
                u = unit[k]
                if not R.levels[k].contains_all(mu[k] @ np.kron(u, I) - I) or \
                        not R.levels[k].contains_all(mu[k] @ np.kron(I, u) - I):
                    out.append(f"level {k}: unit law fails")
                if not R.levels[k].contains_all(R.weyl[k].matrix @ u - u):
                    out.append(f"level {k}: unit not Weyl-fixed")
                if k and not R.levels[k - 1].contains_all(R.res[k].matrix @ u - unit[k - 1]):
                    out.append(f"edge {k}: res(1) != 1")
    return out


class GreenModule:
    """An R-bimodule: a Mackey functor with left and right action pairings.

    ``left[k]`` maps ``R(k) (x) M(k) -> M(k)`` and ``right[k]`` maps
    ``M(k) (x) R(k) -> M(k)``.
    """

    def __init__(self, green: GreenFunctor, mackey: MackeyFunctor, left, right, check: bool = True,
                 twist_exponent: int = 0):
        self.green = green
        self.mackey = mackey
        L, R = mackey.levels, green.mackey.levels
        self.left = {k: _pairing_matrix(left[k], L[k].ngens, R[k].ngens, L[k].ngens) for k in range(mackey.height + 1)}
        self.right = {k: _pairing_matrix(right[k], L[k].ngens, L[k].ngens, R[k].ngens) for k in range(mackey.height + 1)}
        self.twist_exponent = twist_exponent
        if check:
            bad = self.failures()
            if bad:
                raise MackeyError("not a bimodule: " + "; ".join(bad))

    def failures(self) -> list[str]:
        M, R = self.mackey, self.green.mackey
        out = []
        if self.twist_exponent == 0:
            out += _pairing_failures(M, R, M, self.left, which="left action")
        out += _pairing_failures(M, M, R, self.right, which="right action")
        for k in range(M.height + 1):
            nm, nr = M.levels[k].ngens, R.levels[k].ngens
            Im, Ir = identity(nm), identity(nr)
            mu = self.green.mult[k]
            u = self.green.unit[k]
            lft, rgt = self.left[k], self.right[k]
            g = M.levels[k]
            if not g.contains_all(rgt @ np.kron(rgt, Ir) - rgt @ np.kron(Im, mu)):
                out.append(f"level {k}: right action not associative")
            if not g.contains_all(rgt @ np.kron(Im, u) - Im):
                out.append(f"level {k}: right unit law fails")
            if self.twist_exponent == 0:
                if not g.contains_all(lft @ np.kron(mu, Im) - lft @ np.kron(Ir, lft)):
                    out.append(f"level {k}: left action not associative")
                if not g.contains_all(lft @ np.kron(u, Im) - Im):
                    out.append(f"level {k}: left unit law fails")
            # (r m) s = r (m s)
            lhs = rgt @ np.kron(lft, Ir)
            rhs = lft @ np.kron(Ir, rgt)
            if not g.contains_all(lhs - rhs):
                out.append(f"level {k}: left and right actions do not commute")
        return out

    def __repr__(self) -> str:
        t = f" twisted by g^{self.twist_exponent}" if self.twist_exponent else ""
        return f"<GreenModule over {self.green.name}{t}>"


@dataclass(frozen=True)
class TwistTag:
    """The group element ``g**exponent`` of ``C_n``."""

    exponent: int
    n: int

    def __post_init__(self):
        object.__setattr__(self, "exponent", self.exponent % self.n)

    @classmethod
    def generator(cls, n: int) -> "TwistTag":
        return cls(1, n)


def twist(m: GreenModule, t: TwistTag) -> GreenModule:
    """Precompose the left action with ``g**t`` acting on the ring factor."""
    R = m.green.mackey
    if t.n != R.n:
        raise MackeyError("twist element belongs to a different group")
    if t.exponent == 0:
        return m
    left = {}
    for k in range(R.height + 1):
        w = R.weyl_power(k, t.exponent).matrix
        left[k] = m.left[k] @ np.kron(w, identity(m.mackey.levels[k].ngens))
    return GreenModule(m.green, m.mackey, left, m.right, check=False,
                       twist_exponent=(m.twist_exponent + t.exponent) % t.n)


def weyl_action_morphism(m: MackeyFunctor) -> MackeyMorphism:
    """The generator of G acting on every level, as a Mackey endomorphism."""
    return MackeyMorphism(m, m, dict(m.weyl), check=True)


# ---------------------------------------------------------------------------
# rings = Green functors for the trivial group

@dataclass
class RingPresentation:
    """A commutative ring given additively by generators and relations.

    ``mult[k][i][j]`` is the coefficient of generator ``k`` in the product of
    generators ``i`` and ``j``; ``unit`` expresses 1 in the generators.
    """

    group: FGAbelianGroup
    mult: list
    unit: list
    name: str = ""

    def __post_init__(self):
        n = self.group.ngens
        self.mult_matrix = _pairing_matrix(self.mult, n, n, n)
        self.unit_vector = _col(self.unit) if n else zeros(0, 1)
        bad = self.failures()
        if bad:
            raise ValueError("inconsistent multiplication table: " + "; ".join(bad))

    def failures(self) -> list[str]:
        g, mu, u = self.group, self.mult_matrix, self.unit_vector
        n = g.ngens
        I = identity(n)
        out = []
        T = tensor(g, g)
        if T.relations.shape[1] and not g.contains_all(mu @ T.relations):
            out.append("product ignores relations")
        if not g.contains_all(mu @ np.kron(mu, I) - mu @ np.kron(I, mu)):
            out.append("not associative")
        if not g.contains_all(mu @ np.kron(u, I) - I) or not g.contains_all(mu @ np.kron(I, u) - I):
            out.append("unit law fails")
        return out

    def is_commutative(self) -> bool:
        n = self.group.ngens
        mu = self.mult_matrix
        return all(self.group.contains_all(mu[:, [i * n + j]] - mu[:, [j * n + i]])
                   for i in range(n) for j in range(n))

    def characteristic(self) -> int:
        """Additive order of 1 (0 for infinite order)."""
        sub = np.concatenate([self.group.relations, zeros(self.group.ngens, 0)], axis=1)
        for c in range(1, 10_000):
            if FGAbelianGroup(self.group.ngens, sub).contains_all(self.unit_vector * c):
                return c
            if self.group.free_rank:
                return 0
        return 0

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "generators": self.group.ngens,
            "relations": self.group.relations.T.tolist(),
            "mult": [[[int(self.mult_matrix[k, i * self.group.ngens + j]) for j in range(self.group.ngens)]
                      for i in range(self.group.ngens)] for k in range(self.group.ngens)],
            "unit": [int(x) for x in self.unit_vector[:, 0]],
        }

    @classmethod
    def from_json(cls, d: dict) -> "RingPresentation":
        n = int(d["generators"])
        rel = d.get("relations", [])
        relm = int_matrix(rel, 0, n).T if rel else zeros(n, 0)
        return cls(FGAbelianGroup(n, relm), d["mult"], d["unit"], d.get("name", ""))


def ring_Zmod(m: int) -> RingPresentation:
    """Z/m (m = 0 gives Z)."""
    g = FGAbelianGroup.cyclic(m)
    return RingPresentation(g, [[[1]]], [1], name="Z" if m == 0 else f"Z/{m}")


def ring_Z() -> RingPresentation:
    return ring_Zmod(0)


def ring_truncated_poly(p: int, degree: int) -> RingPresentation:
    """``Z/p[x]/(x^degree)`` on the basis ``1, x, ..., x^{degree-1}``."""
    g = FGAbelianGroup.cyclic(*([p] * degree))
    mult = [[[int(i + j == k) for j in range(degree)] for i in range(degree)] for k in range(degree)]
    unit = [1] + [0] * (degree - 1)
    return RingPresentation(g, mult, unit, name=f"F{p}[x]/(x^{degree})")


def green_from_ring(r: RingPresentation) -> GreenFunctor:
    """The ring as a Green functor for the trivial group."""
    m = MackeyFunctor(CyclicGroup(1), [r.group], {}, {}, check=False, name=r.name)
    return GreenFunctor(m, {0: r.mult_matrix}, {0: r.unit_vector}, check=True, name=r.name)


def green_quotient(R: GreenFunctor, gens: dict[int, np.ndarray], name: str = "") -> tuple[GreenFunctor, MackeyMorphism]:
    """Quotient of R by an ideal given by levelwise generators.

    The generated subgroups must form a sub-Mackey functor closed under
    multiplication by R; the result is checked as a Green functor.
    """
    from .mackey import quotient_by_generators

    q, proj, lifts = quotient_by_generators(R.mackey, gens, name=name or f"{R.name}/I")
    mult, unit = {}, {}
    for k in range(R.height + 1):
        P, S = proj.maps[k].matrix, lifts[k]
        mult[k] = P @ R.mult[k] @ np.kron(S, S)
        unit[k] = P @ R.unit[k]
    return GreenFunctor(q, mult, unit, check=True, name=q.name), proj
