"""Box products of Mackey functors for cyclic p-groups.

The value of ``M box N`` at ``G/C_{p^h}`` is presented as the coend

    (+)_{l <= h}  M(l) (x) N(l)   /   naturality relations

where the summand ``l`` stands for transfers ``tr_l^h(a (x) b)``.  The
naturality relations used are the ones coming from a generating set of the
Burnside category: the factor presentations, Weyl translations
(``tr_l^h(ga (x) gb) = tr_l^h(a (x) b)`` for ``g`` in ``C_{p^h}``) and the two
Frobenius relations across every adjacent pair of levels.

Iterated products ``F_0 box ... box F_q`` are built left to right, each step
diagonalised, and carry their *pure tensor* data: where ``tr_l^h(x_0 (x) ...
(x) x_q)`` lands, and a section expressing every generator as a sum of
transferred pure tensors.  Maps out of a box product are specified on pure
tensors.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .abelian import FGAbelianGroup, GroupHom, identity, imatmul, sparse_cokernel, tensor, zeros
from .mackey import MackeyError, MackeyFunctor, MackeyMorphism, mackey_cokernel

__all__ = [
    "MultiBox",
    "box",
    "box_inductive_levels",
    "symmetry_iso",
    "unit_iso",
    "associator",
    "relative_box",
    "BudgetExceeded",
]

Term = tuple[int, tuple[int, ...]]


class BudgetExceeded(RuntimeError):
    """A computation would exceed its resource budget."""


def _same_group(fs):
    g = fs[0].group
    for f in fs[1:]:
        if f.group != g:
            raise MackeyError("box product of functors for different groups")


class _Binary:
    """One diagonalised binary box step ``X box Y``."""

    def __init__(self, X: MackeyFunctor, Y: MackeyFunctor, max_raw: int | None = None):
        _same_group([X, Y])
        self.X, self.Y = X, Y
        H = X.height
        self.offsets: list[dict[int, int]] = []
        self.raw_size: list[int] = []
        for h in range(H + 1):
            off, tot = {}, 0
            for l in range(h + 1):
                off[l] = tot
                tot += X.levels[l].ngens * Y.levels[l].ngens
            self.offsets.append(off)
            self.raw_size.append(tot)
            if max_raw is not None and tot > max_raw:
                raise BudgetExceeded(f"box level {h} needs {tot} raw generators (budget {max_raw})")
        self.proj, self.lift, groups = [], [], []
        for h in range(H + 1):
            orders, P, S = sparse_cokernel(self.raw_size[h], self._relations(h))
            groups.append(FGAbelianGroup.cyclic(*orders))
            self.proj.append(P)
            self.lift.append(S)
        res, tr, weyl = {}, {}, {}
        for h in range(H + 1):
            weyl[h] = imatmul(self.proj[h], self._weyl_raw(h), self.lift[h])
            if h:
                res[h] = imatmul(self.proj[h - 1], self._res_raw(h), self.lift[h])
                tr[h] = imatmul(self.proj[h], self._tr_raw(h), self.lift[h - 1])
        res = {h: GroupHom(groups[h], groups[h - 1], m, check=False) for h, m in res.items()}
        tr = {h: GroupHom(groups[h - 1], groups[h], m, check=False) for h, m in tr.items()}
        weyl = {h: GroupHom(groups[h], groups[h], m, check=False) for h, m in weyl.items()}
        self.mackey = MackeyFunctor(X.group, groups, res, tr, weyl, check=False)

    def idx(self, h: int, l: int, i: int, j: int) -> int:
        return self.offsets[h][l] + i * self.Y.levels[l].ngens + j

    def _relations(self, h: int) -> list[dict[int, int]]:
        X, Y = self.X, self.Y
        rels: list[dict[int, int]] = []

        def add(d):
            d = {k: v for k, v in d.items() if v}
            if d:
                rels.append(d)

        for l in range(h + 1):
            a, b = X.levels[l].ngens, Y.levels[l].ngens
            RX, RY = X.levels[l].relations, Y.levels[l].relations
            for c in range(RX.shape[1]):
                for j in range(b):
                    add({self.idx(h, l, i, j): RX[i, c] for i in range(a) if RX[i, c]})
            for c in range(RY.shape[1]):
                for i in range(a):
                    add({self.idx(h, l, i, j): RY[j, c] for j in range(b) if RY[j, c]})
            if l < h:
                e = X.index(h)
                WX, WY = X.weyl_power(l, e).matrix, Y.weyl_power(l, e).matrix
                for i in range(a):
                    for j in range(b):
                        d: dict[int, int] = {}
                        for s in np.nonzero(WX[:, i])[0]:
                            for t in np.nonzero(WY[:, j])[0]:
                                k = self.idx(h, l, s, t)
                                d[k] = d.get(k, 0) + WX[s, i] * WY[t, j]
                        k = self.idx(h, l, i, j)
                        d[k] = d.get(k, 0) - 1
                        add(d)
        for k in range(1, h + 1):
            trY, resX = Y.tr[k].matrix, X.res[k].matrix
            trX, resY = X.tr[k].matrix, Y.res[k].matrix
            # tr_k(a (x) tr b) = tr_{k-1}(res a (x) b)
            for i in range(X.levels[k].ngens):
                for j in range(Y.levels[k - 1].ngens):
                    d = {}
                    for t in np.nonzero(trY[:, j])[0]:
                        d[self.idx(h, k, i, t)] = trY[t, j]
                    for s in np.nonzero(resX[:, i])[0]:
                        kk = self.idx(h, k - 1, s, j)
                        d[kk] = d.get(kk, 0) - resX[s, i]
                    add(d)
            # tr_k(tr a (x) b) = tr_{k-1}(a (x) res b)
            for i in range(X.levels[k - 1].ngens):
                for j in range(Y.levels[k].ngens):
                    d = {}
                    for s in np.nonzero(trX[:, i])[0]:
                        d[self.idx(h, k, s, j)] = trX[s, i]
                    for t in np.nonzero(resY[:, j])[0]:
                        kk = self.idx(h, k - 1, i, t)
                        d[kk] = d.get(kk, 0) - resY[t, j]
                    add(d)
        return rels

    def _weyl_raw(self, h):
        out = zeros(self.raw_size[h], self.raw_size[h])
        for l in range(h + 1):
            blk = np.kron(self.X.weyl[l].matrix, self.Y.weyl[l].matrix)
            o = self.offsets[h][l]
            out[o:o + blk.shape[0], o:o + blk.shape[1]] = blk
        return out

    def _tr_raw(self, h):
        out = zeros(self.raw_size[h], self.raw_size[h - 1])
        for l in range(h):
            o1, o0 = self.offsets[h][l], self.offsets[h - 1][l]
            n = self.X.levels[l].ngens * self.Y.levels[l].ngens
            for t in range(n):
                out[o1 + t, o0 + t] = 1
        return out

    def _res_raw(self, h):
        X, Y = self.X, self.Y
        out = zeros(self.raw_size[h - 1], self.raw_size[h])
        blk = np.kron(X.res[h].matrix, Y.res[h].matrix)
        o1, o0 = self.offsets[h][h], self.offsets[h - 1][h - 1]
        out[o0:o0 + blk.shape[0], o1:o1 + blk.shape[1]] = blk
        c = X.index(h)
        for l in range(h):
            acc = None
            for j in range(X.p):
                term = np.kron(X.weyl_power(l, c * j).matrix, Y.weyl_power(l, c * j).matrix)
                acc = term if acc is None else acc + term
            o1, o0 = self.offsets[h][l], self.offsets[h - 1][l]
            out[o0:o0 + acc.shape[0], o1:o1 + acc.shape[1]] = acc
        return out


class MultiBox:
    """The box product ``F_0 box F_1 box ... box F_q`` with pure-tensor data.

    ``mackey`` is the product as a :class:`MackeyFunctor`.  ``pure(l, idx)``
    gives the element ``x_0 (x) ... (x) x_q`` at level ``l`` where ``x_i`` is
    generator ``idx[i]`` of ``F_i(l)``.  ``section(h)`` writes each generator of
    level ``h`` as a combination of ``tr_l^h(pure(l, idx))`` terms.
    """

    def __init__(self, factors: list[MackeyFunctor], max_raw: int | None = None, _prev: "MultiBox | None" = None):
        if not factors:
            raise MackeyError("empty box product")
        _same_group(factors)
        self.factors = list(factors)
        self.group = factors[0].group
        self.height = factors[0].height
        if len(factors) == 1:
            self.prev = None
            self.step = None
            self.mackey = factors[0]
        else:
            self.prev = _prev if _prev is not None else MultiBox(factors[:-1], max_raw=max_raw)
            self.step = _Binary(self.prev.mackey, factors[-1], max_raw=max_raw)
            self.mackey = self.step.mackey
        self._pure: dict[tuple[int, tuple[int, ...]], np.ndarray] = {}
        self._section: dict[int, list[dict[Term, int]]] = {}

    def extend(self, factor: MackeyFunctor, max_raw: int | None = None) -> "MultiBox":
        """``self box factor``, reusing the work already done."""
        return MultiBox(self.factors + [factor], max_raw=max_raw, _prev=self)

    @property
    def arity(self) -> int:
        return len(self.factors)

    def pure(self, l: int, idx: tuple[int, ...]) -> np.ndarray:
        key = (l, idx)
        v = self._pure.get(key)
        if v is not None:
            return v
        if self.prev is None:
            v = zeros(self.mackey.levels[l].ngens, 1)
            v[idx[0], 0] = 1
        else:
            pv = self.prev.pure(l, idx[:-1])
            P = self.step.proj[l]
            v = zeros(P.shape[0], 1)
            for i in np.nonzero(pv[:, 0])[0]:
                v[:, 0] += pv[i, 0] * P[:, self.step.idx(l, l, i, idx[-1])]
            v = self.mackey.levels[l].reduce(v)
        self._pure[key] = v
        return v

    def section(self, h: int) -> list[dict[Term, int]]:
        s = self._section.get(h)
        if s is not None:
            return s
        if self.prev is None:
            s = [{(h, (g,)): 1} for g in range(self.mackey.levels[h].ngens)]
        else:
            step, Y = self.step, self.factors[-1]
            S = step.lift[h]
            s = []
            for g in range(S.shape[1]):
                acc: dict[Term, int] = {}
                for l in range(h + 1):
                    a, b = step.X.levels[l].ngens, Y.levels[l].ngens
                    if a * b == 0:
                        continue
                    sec = self.prev.section(l)
                    o = step.offsets[h][l]
                    for i in range(a):
                        for j in range(b):
                            c = S[o + i * b + j, g]
                            if not c:
                                continue
                            for (l2, t), c2 in sec[i].items():
                                r = Y.res_between(l, l2).matrix[:, j] if l2 < l else None
                                if r is None:
                                    key = (l2, t + (j,))
                                    acc[key] = acc.get(key, 0) + c * c2
                                else:
                                    for k in np.nonzero(r)[0]:
                                        key = (l2, t + (int(k),))
                                        acc[key] = acc.get(key, 0) + c * c2 * r[k]
                s.append({k: v for k, v in acc.items() if v})
        self._section[h] = s
        return s

    def map_out(self, target: MackeyFunctor, phi, check: bool = False) -> MackeyMorphism:
        """Mackey morphism determined by values ``phi(l, idx)`` on pure tensors.

        ``phi`` must return a column vector in ``target.levels[l]``; it has to
        be multilinear, Weyl-equivariant and Frobenius-compatible for the
        result to be well defined (verified when ``check`` is true).
        """
        cache: dict[Term, np.ndarray] = {}
        trs = {}
        maps = {}
        for h in range(self.height + 1):
            sec = self.section(h)
            out = zeros(target.levels[h].ngens, len(sec))
            for g, terms in enumerate(sec):
                for (l, t), c in terms.items():
                    v = cache.get((l, t))
                    if v is None:
                        v = phi(l, t)
                        cache[(l, t)] = v
                    if l < h:
                        key = (l, h)
                        if key not in trs:
                            trs[key] = target.tr_between(l, h).matrix
                        v = trs[key] @ v
                    out[:, g:g + 1] += c * v
            maps[h] = target.levels[h].reduce(out)
        if check:
            self._check_phi(target, phi)
        return MackeyMorphism(self.mackey, target, maps, check=check)

    def _check_phi(self, target, phi):
        # phi must kill the presentation of every level's pure tensor space
        for l in range(self.height + 1):
            T = self.factors[0].levels[l]
            for f in self.factors[1:]:
                T = tensor(T, f.levels[l])
            n = T.ngens
            shape = [f.levels[l].ngens for f in self.factors]
            cols = []
            for flat in range(n):
                idx = tuple(int(x) for x in np.unravel_index(flat, shape)) if n else ()
                cols.append(phi(l, idx))
            if not cols:
                continue
            M = np.concatenate(cols, axis=1)
            if T.relations.shape[1] and not target.levels[l].contains_all(M @ T.relations):
                raise MackeyError(f"pure-tensor map ignores relations at level {l}")

    def pure_map(self, other: "MultiBox", f) -> MackeyMorphism:
        """Map to another box product given by ``f(l, idx) -> {idx': coeff}``."""

        def phi(l, idx):
            out = zeros(other.mackey.levels[l].ngens, 1)
            for t, c in f(l, idx).items():
                if c:
                    out += c * other.pure(l, t)
            return out

        return self.map_out(other.mackey, phi)

    def __repr__(self) -> str:
        return f"<MultiBox of {self.arity} factors: {[str(g) for g in self.mackey.levels]}>"


def box(m: MackeyFunctor, n: MackeyFunctor, max_raw: int | None = None) -> MultiBox:
    """``m box n`` together with its universal bilinear data."""
    return MultiBox([m, n], max_raw=max_raw)


def symmetry_iso(m: MackeyFunctor, n: MackeyFunctor) -> tuple[MultiBox, MultiBox, MackeyMorphism]:
    """The swap ``m box n -> n box m`` (returns both products and the map)."""
    a, b = box(m, n), box(n, m)
    return a, b, a.pure_map(b, lambda l, t: {(t[1], t[0]): 1})


def unit_iso(M: MackeyFunctor) -> tuple[MultiBox, MackeyMorphism]:
    """The canonical map ``A box M -> M``.

    The basis element ``[C_{p^l}/C_{p^j}]`` of A acts on ``M(l)`` as
    ``tr_j^l res_j^l``.
    """
    from .burnside import burnside_mackey

    A = burnside_mackey(M.group)
    B = box(A, M)

    def phi(l, t):
        j = l - t[0]
        v = zeros(M.levels[l].ngens, 1)
        v[t[1], 0] = 1
        return (M.tr_between(j, l) @ M.res_between(l, j)).matrix @ v

    return B, B.map_out(M, phi)


def associator(m, n, p) -> tuple[MultiBox, MultiBox, MackeyMorphism]:
    """``(m box n) box p -> m box (n box p)``."""
    left = MultiBox([m, n, p])
    np_ = box(n, p)
    right = MultiBox([m, np_.mackey])

    def phi(l, t):
        v = np_.pure(l, (t[1], t[2]))
        out = zeros(right.mackey.levels[l].ngens, 1)
        for s in np.nonzero(v[:, 0])[0]:
            out += v[s, 0] * right.pure(l, (t[0], int(s)))
        return out

    return left, right, left.map_out(right.mackey, phi)


def relative_box(right_mod, left_mod):
    """``N box_R M`` for a right R-module N and a left R-module M.

    Computed as the cokernel of ``rho box id - id box lambda`` from
    ``N box R box M`` to ``N box M``.  R must be commutative.
    """
    R = right_mod.green
    if left_mod.green is not R:
        raise MackeyError("modules over different Green functors")
    if not R.is_commutative():
        raise MackeyError("relative box product needs a commutative base")
    N, M, Rm = right_mod.mackey, left_mod.mackey, R.mackey
    triple = MultiBox([N, Rm, M])
    pair_ = MultiBox([N, M])

    def rho(l, t):
        i, r, j = t
        nr = Rm.levels[l].ngens
        col = right_mod.right[l][:, i * nr + r]
        return {(int(k), j): col[k] for k in np.nonzero(col)[0]}

    def lam(l, t):
        i, r, j = t
        nm = M.levels[l].ngens
        col = left_mod.left[l][:, r * nm + j]
        return {(i, int(k)): col[k] for k in np.nonzero(col)[0]}

    f = triple.pure_map(pair_, rho) - triple.pure_map(pair_, lam)
    q, proj, lifts = mackey_cokernel(f)
    return q, proj, pair_


# ---------------------------------------------------------------------------
# independent level-by-level model (used as a cross-check)

def box_inductive_levels(m: MackeyFunctor, n: MackeyFunctor) -> list[FGAbelianGroup]:
    """Levels of ``m box n`` from the inductive description.

    Level h is ``m(h) (x) n(h)`` plus the ``C_{p^h}``-coinvariants of level
    ``h-1``, modulo the Frobenius relations between levels ``h-1`` and ``h``.
    Only transfers from the adjacent level are used; everything lower comes
    in through the recursively presented level ``h-1``.
    """
    _same_group([m, n])
    out = []
    prev = None  # (ngens, relations, weyl, pure) of the level below
    for h in range(m.height + 1):
        T = tensor(m.levels[h], n.levels[h])
        nt = T.ngens
        wt = np.kron(m.weyl[h].matrix, n.weyl[h].matrix)
        if prev is None:
            gens, rel, weyl = nt, T.relations, wt
            pure = identity(nt)
        else:
            pg, prel, pweyl, ppure = prev
            gens = nt + pg
            cols = []
            if T.relations.shape[1]:
                c = zeros(gens, T.relations.shape[1])
                c[:nt, :] = T.relations
                cols.append(c)
            if prel.shape[1]:
                c = zeros(gens, prel.shape[1])
                c[nt:, :] = prel
                cols.append(c)
            e = m.index(h)
            we = identity(pg)
            for _ in range(e):
                we = pweyl @ we
            c = zeros(gens, pg)
            c[nt:, :] = we - identity(pg)
            cols.append(c)
            am, bn = m.levels[h].ngens, n.levels[h].ngens
            am1, bn1 = m.levels[h - 1].ngens, n.levels[h - 1].ngens
            # tr(x) (x) y ~ t(x (x) res y)
            fr = zeros(gens, am1 * bn)
            lhs = np.kron(m.tr[h].matrix, identity(bn))
            rhs = ppure @ np.kron(identity(am1), n.res[h].matrix)
            fr[:nt, :] = lhs
            fr[nt:, :] = -rhs
            cols.append(fr)
            # x (x) tr(y) ~ t(res x (x) y)
            fr = zeros(gens, am * bn1)
            fr[:nt, :] = np.kron(identity(am), n.tr[h].matrix)
            fr[nt:, :] = -(ppure @ np.kron(m.res[h].matrix, identity(bn1)))
            cols.append(fr)
            rel = np.concatenate(cols, axis=1)
            weyl = zeros(gens, gens)
            weyl[:nt, :nt] = wt
            weyl[nt:, nt:] = pweyl
            pure = zeros(gens, nt)
            pure[:nt, :] = identity(nt)
        out.append(FGAbelianGroup(gens, rel))
        prev = (gens, rel, weyl, pure)
    return out
