"""The twisted cyclic nerve and twisted Hochschild homology of Green functors.

``B_q = M box R box ... box R`` (q copies of R).  Faces are the right action,
the adjacent multiplications, and (last face) rotation of the final R factor
to the front followed by the left action twisted by ``g``.  Degeneracies
insert the unit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .abelian import ChainComplexZ, FGAbelianGroup, GroupHom, lift_through, zeros
from .box import BudgetExceeded, MultiBox
from .green import GreenFunctor, GreenModule, RingPresentation, TwistTag, twist
from .mackey import (
    MackeyError,
    MackeyFunctor,
    MackeyMorphism,
    mackey_cokernel,
    mackey_kernel,
    quotient_by_generators,
)

__all__ = [
    "SimplicialMackey",
    "MackeyChainComplex",
    "twisted_cyclic_nerve",
    "normalized_complex",
    "unnormalized_complex",
    "mackey_homology",
    "hh_twisted",
    "hh_relative",
    "hh_degree0_coequalizer",
    "classical_hochschild",
    "BudgetExceeded",
]


def _vec_to_terms(v: np.ndarray):
    return [(int(s), v[s, 0]) for s in np.nonzero(v[:, 0])[0]]


class SimplicialMackey:
    """Simplicial Mackey functor stored up to ``q_max``."""

    def __init__(self, objects: list[MackeyFunctor], faces: dict[tuple[int, int], MackeyMorphism],
                 degeneracies: dict[tuple[int, int], MackeyMorphism], name: str = ""):
        self.objects = objects
        self.faces = faces  # (q, i): B_q -> B_{q-1}
        self.degeneracies = degeneracies  # (q, i): B_q -> B_{q+1}
        self.name = name
        self.boxes: list[MultiBox] | None = None

    @property
    def q_max(self) -> int:
        return len(self.objects) - 1

    def d(self, q: int, i: int) -> MackeyMorphism:
        return self.faces[(q, i)]

    def s(self, q: int, i: int) -> MackeyMorphism:
        return self.degeneracies[(q, i)]

    def identity_failures(self) -> list[str]:
        """Check every simplicial identity among the stored maps."""
        out = []
        Q = self.q_max

        def same(a, b, what):
            if not a.equals(b):
                out.append(what)

        for q in range(2, Q + 1):
            for j in range(q + 1):
                for i in range(j):
                    same(self.d(q - 1, i) @ self.d(q, j), self.d(q - 1, j - 1) @ self.d(q, i),
                         f"d{i} d{j} != d{j-1} d{i} on B{q}")
        for q in range(0, Q):
            for j in range(q + 1):
                ident = MackeyMorphism.identity(self.objects[q])
                sj = self.s(q, j)
                same(self.d(q + 1, j) @ sj, ident, f"d{j} s{j} != id on B{q}")
                same(self.d(q + 1, j + 1) @ sj, ident, f"d{j+1} s{j} != id on B{q}")
                for i in range(q + 2):
                    if i < j:
                        same(self.d(q + 1, i) @ sj, self.s(q - 1, j - 1) @ self.d(q, i),
                             f"d{i} s{j} != s{j-1} d{i} on B{q}")
                    elif i > j + 1:
                        same(self.d(q + 1, i) @ sj, self.s(q - 1, j) @ self.d(q, i - 1),
                             f"d{i} s{j} != s{j} d{i-1} on B{q}")
        for q in range(0, Q - 1):
            for j in range(q + 1):
                for i in range(j + 1):
                    same(self.s(q + 1, i) @ self.s(q, j), self.s(q + 1, j + 1) @ self.s(q, i),
                         f"s{i} s{j} != s{j+1} s{i} on B{q}")
        return out


@dataclass
class MackeyChainComplex:
    """``objects[q]`` with ``diffs[q]: objects[q] -> objects[q-1]`` (q >= 1)."""

    objects: list[MackeyFunctor]
    diffs: dict[int, MackeyMorphism]
    projections: list[MackeyMorphism] | None = None  # from the unnormalized objects
    lifts: list[dict[int, np.ndarray]] | None = None
    _homology: dict[int, MackeyFunctor] = field(default_factory=dict, repr=False)

    @property
    def top(self) -> int:
        return len(self.objects) - 1

    def dd_failures(self) -> list[str]:
        return [f"d{q-1} d{q} != 0" for q in range(2, self.top + 1)
                if not (self.diffs[q - 1] @ self.diffs[q]).is_zero()]

    def level(self, k: int) -> ChainComplexZ:
        """The chain complex of abelian groups at subgroup level ``k``."""
        return ChainComplexZ([o.levels[k] for o in self.objects],
                             {q: self.diffs[q].maps[k] for q in self.diffs}, lo=0)

    def homology(self, q: int) -> MackeyFunctor:
        """Homology in degree ``q``; needs ``q + 1 <= top``."""
        if q + 1 > self.top:
            raise BudgetExceeded(f"homology in degree {q} needs the complex through degree {q + 1}")
        if q not in self._homology:
            self._homology[q] = mackey_homology(self.diffs.get(q), self.diffs[q + 1], self.objects[q])
        return self._homology[q]


def mackey_homology(d_out: MackeyMorphism | None, d_in: MackeyMorphism, obj: MackeyFunctor) -> MackeyFunctor:
    """``ker(d_out) / im(d_in)`` with the induced Mackey structure."""
    if d_out is None:
        K, inc = obj, MackeyMorphism.identity(obj)
    else:
        K, inc = mackey_kernel(d_out)
    lifted = {k: lift_through(inc.maps[k], d_in.maps[k]).matrix for k in range(obj.height + 1)}
    f = MackeyMorphism(d_in.source, K, lifted, check=False)
    H, _, _ = mackey_cokernel(f)
    return H


# ---------------------------------------------------------------------------

def twisted_cyclic_nerve(R: GreenFunctor, M: GreenModule, t: TwistTag, q_max: int,
                         max_raw: int | None = None) -> SimplicialMackey:
    """``B_q = M box R^{box q}`` for ``q <= q_max`` with the twisted last face."""
    if M.green is not R:
        raise MackeyError("module is not over the given Green functor")
    if q_max < 0:
        raise ValueError("q_max must be non-negative")
    Mt = twist(M, t)
    Rm, Mm = R.mackey, M.mackey
    boxes = [MultiBox([Mm], max_raw=max_raw)]
    for _ in range(q_max):
        boxes.append(boxes[-1].extend(Rm, max_raw=max_raw))

    def nr(l):
        return Rm.levels[l].ngens

    def nm(l):
        return Mm.levels[l].ngens

    faces, degens = {}, {}
    for q in range(1, q_max + 1):
        src, tgt = boxes[q], boxes[q - 1]
        for i in range(q + 1):
            if i == 0:
                def f(l, tt):
                    v = M.right[l][:, [tt[0] * nr(l) + tt[1]]]
                    return {(s,) + tt[2:]: c for s, c in _vec_to_terms(v)}
            elif i < q:
                def f(l, tt, i=i):
                    v = R.mult[l][:, [tt[i] * nr(l) + tt[i + 1]]]
                    return {tt[:i] + (s,) + tt[i + 2:]: c for s, c in _vec_to_terms(v)}
            else:
                def f(l, tt):
                    v = Mt.left[l][:, [tt[-1] * nm(l) + tt[0]]]
                    return {(s,) + tt[1:-1]: c for s, c in _vec_to_terms(v)}
            faces[(q, i)] = src.pure_map(tgt, f)
    for q in range(0, q_max):
        src, tgt = boxes[q], boxes[q + 1]
        for i in range(q + 1):
            def f(l, tt, i=i):
                u = R.unit[l]
                return {tt[:i + 1] + (s,) + tt[i + 1:]: c for s, c in _vec_to_terms(u)}
            degens[(q, i)] = src.pure_map(tgt, f)
    out = SimplicialMackey([b.mackey for b in boxes], faces, degens,
                           name=f"B^cy({R.name}; twist g^{t.exponent})")
    out.boxes = boxes
    return out


def unnormalized_complex(s: SimplicialMackey) -> MackeyChainComplex:
    diffs = {}
    for q in range(1, s.q_max + 1):
        d = s.d(q, 0)
        for i in range(1, q + 1):
            d = d + s.d(q, i) * ((-1) ** i)
        diffs[q] = d
    return MackeyChainComplex(list(s.objects), diffs)


def normalized_complex(s: SimplicialMackey, check: bool = False) -> MackeyChainComplex:
    """Quotient by degenerate simplices with the alternating face sum."""
    if check:
        bad = s.identity_failures()
        if bad:
            raise MackeyError("simplicial identities fail: " + "; ".join(bad[:5]))
    objs, projs, lifts = [], [], []
    for q, B in enumerate(s.objects):
        gens = {}
        for k in range(B.height + 1):
            cols = [s.s(q - 1, i).maps[k].matrix for i in range(q)] if q else []
            gens[k] = np.concatenate(cols, axis=1) if cols else zeros(B.levels[k].ngens, 0)
        N, P, L = quotient_by_generators(B, gens, name=f"N{q}")
        objs.append(N)
        projs.append(P)
        lifts.append(L)
    un = unnormalized_complex(s)
    diffs = {}
    for q in range(1, s.q_max + 1):
        maps = {k: projs[q - 1].maps[k].matrix @ un.diffs[q].maps[k].matrix @ lifts[q][k]
                for k in range(objs[q].height + 1)}
        diffs[q] = MackeyMorphism(objs[q], objs[q - 1], maps, check=check)
    return MackeyChainComplex(objs, diffs, projs, lifts)


def hh_twisted(R: GreenFunctor, degrees: int, M: GreenModule | None = None, t: TwistTag | None = None,
               q_max: int | None = None, max_raw: int | None = None, check: bool = False) -> list[MackeyFunctor]:
    """``HH^G_i(R; M)`` for ``i = 0..degrees`` (default ``M = R``, ``t = g``)."""
    need = degrees + 1
    if q_max is None:
        q_max = need
    if need > q_max:
        raise BudgetExceeded(f"degrees 0..{degrees} need nerve levels through {need}, budget is {q_max}")
    M = M if M is not None else R.as_module()
    t = t if t is not None else TwistTag.generator(R.mackey.n)
    nerve = twisted_cyclic_nerve(R, M, t, need, max_raw=max_raw)
    C = normalized_complex(nerve, check=check)
    if check and C.dd_failures():
        raise MackeyError("normalized complex is not a complex")
    return [C.homology(i) for i in range(degrees + 1)]


def hh_relative(r: RingPresentation, group, degrees: int, **kw) -> list[MackeyFunctor]:
    """``HH^G_e(r)``: twisted Hochschild homology of the norm ``N_e^G r``."""
    from .norm import norm_ring

    return hh_twisted(norm_ring(r, group).green, degrees, **kw)


def hh_degree0_coequalizer(R: GreenFunctor, M: GreenModule | None = None,
                           t: TwistTag | None = None) -> MackeyFunctor:
    """Degree-0 HH as the coequalizer of ``d_0, d_1: M box R -> M``."""
    M = M if M is not None else R.as_module()
    t = t if t is not None else TwistTag.generator(R.mackey.n)
    nerve = twisted_cyclic_nerve(R, M, t, 1)
    q, _, _ = mackey_cokernel(nerve.d(1, 0) - nerve.d(1, 1))
    return q


# ---------------------------------------------------------------------------
# classical Hochschild complex of a ring (independent of the box machinery)

def classical_hochschild(r: RingPresentation, degrees: int) -> list[FGAbelianGroup]:
    """``HH_i(r)`` over Z from the bar complex ``r^{(x) q+1}`` with ``b``."""
    from itertools import product

    from .abelian import tensor

    n = r.group.ngens
    mu = r.mult_matrix
    groups = [r.group]
    for _ in range(degrees + 1):
        groups.append(tensor(groups[-1], r.group))

    def b(q):
        # C_q = r^{(x) q+1} -> C_{q-1}; generator index is base-n digits
        src, tgt = groups[q], groups[q - 1]
        out = zeros(tgt.ngens, src.ngens)
        for col, digits in enumerate(product(range(n), repeat=q + 1)):
            for i in range(q + 1):
                sign = (-1) ** i
                if i < q:
                    prod_ = mu[:, digits[i] * n + digits[i + 1]]
                    for s in np.nonzero(prod_)[0]:
                        d2 = digits[:i] + (int(s),) + digits[i + 2:]
                        out[_flat(d2, n), col] += sign * prod_[s]
                else:
                    prod_ = mu[:, digits[q] * n + digits[0]]
                    for s in np.nonzero(prod_)[0]:
                        d2 = (int(s),) + digits[1:q]
                        out[_flat(d2, n), col] += sign * prod_[s]
        return GroupHom(src, tgt, out, check=False)

    C = ChainComplexZ(groups, {q: b(q) for q in range(1, degrees + 2)}, lo=0)
    return [C.homology(i) for i in range(degrees + 1)]


def _flat(digits, n):
    x = 0
    for d in digits:
        x = x * n + d
    return x
