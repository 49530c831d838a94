"""Mackey functors for cyclic p-groups.

A Mackey functor for ``G = C_{p^N}`` is stored by its values on the orbits
``G/C_{p^k}`` (``k = 0..N``, so level 0 is the underlying ``G/e`` value), the
restriction and transfer between adjacent levels, and one automorphism per
level giving the action of the generator ``g`` of ``G``.  Everything else
(non-adjacent maps, the value on an arbitrary span) is derived.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .abelian import (
    FGAbelianGroup,
    GroupHom,
    imatmul,
    direct_sum,
    hom_cokernel,
    hom_image,
    hom_kernel,
    identity,
    int_matrix,
    lift_through,
    subgroup_from_generators,
    zeros,
)
from .burnside import CyclicGroup, SpanClass

__all__ = [
    "MackeyFunctor",
    "MackeyMorphism",
    "AxiomReport",
    "MackeyError",
    "check_axioms",
    "evaluate_span",
    "generated_submackey",
    "mackey_direct_sum",
]


class MackeyError(ValueError):
    pass


@dataclass
class AxiomReport:
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        return "pass" if self.ok else "fail:\n  " + "\n  ".join(self.failures)


def _hom(src, tgt, m):
    if isinstance(m, GroupHom):
        return m
    return GroupHom(src, tgt, int_matrix(m, tgt.ngens, src.ngens), check=True)


class MackeyFunctor:
    """Levels, adjacent restrictions/transfers and Weyl generators.

    ``res[k]`` maps level k to level k-1 and ``tr[k]`` maps level k-1 to level
    k (for ``k >= 1``).  ``weyl[k]`` is the action of the generator of G on
    level k; ``None`` means the identity.
    """

    def __init__(self, group: CyclicGroup, levels, res, tr, weyl=None, check: bool = True, name: str = ""):
        pk = group.prime_power
        if pk is None:
            raise MackeyError(f"{group} is not a cyclic p-group")
        self.group = group
        self.p, self.height = pk
        self.name = name
        self.levels: list[FGAbelianGroup] = list(levels)
        if len(self.levels) != self.height + 1:
            raise MackeyError(f"expected {self.height + 1} levels, got {len(self.levels)}")
        L = self.levels
        self.res = {k: _hom(L[k], L[k - 1], res[k]) for k in range(1, self.height + 1)}
        self.tr = {k: _hom(L[k - 1], L[k], tr[k]) for k in range(1, self.height + 1)}
        weyl = weyl or {}
        self.weyl = {}
        for k in range(self.height + 1):
            w = weyl.get(k) if isinstance(weyl, dict) else weyl[k]
            self.weyl[k] = GroupHom.identity(L[k]) if w is None else _hom(L[k], L[k], w)
        if check:
            rep = check_axioms(self)
            if not rep.ok:
                raise MackeyError(str(rep))

    # -- shape -------------------------------------------------------------
    @property
    def n(self) -> int:
        return self.group.order

    def order_of(self, k: int) -> int:
        return self.p ** k

    def level_of(self, d: int) -> int:
        """Level index of the subgroup of order ``d``."""
        k = 0
        while self.p ** k < d:
            k += 1
        if self.p ** k != d or k > self.height:
            raise MackeyError(f"C{d} is not a subgroup of {self.group}")
        return k

    def index(self, k: int) -> int:
        """``[G : C_{p^k}]``."""
        return self.p ** (self.height - k)

    def ranks(self) -> list[tuple[int, tuple[int, ...]]]:
        return [g.invariants for g in self.levels]

    def is_zero(self) -> bool:
        return all(g.is_zero() for g in self.levels)

    # -- derived maps ------------------------------------------------------
    def weyl_power(self, k: int, e: int) -> GroupHom:
        e %= self.index(k) if self.index(k) else 1
        out = GroupHom.identity(self.levels[k])
        w = self.weyl[k]
        for _ in range(e):
            out = w @ out
        return out

    def res_between(self, hi: int, lo: int) -> GroupHom:
        out = GroupHom.identity(self.levels[hi])
        for k in range(hi, lo, -1):
            out = self.res[k] @ out
        return out

    def tr_between(self, lo: int, hi: int) -> GroupHom:
        out = GroupHom.identity(self.levels[lo])
        for k in range(lo + 1, hi + 1):
            out = self.tr[k] @ out
        return out

    def weyl_sum(self, k: int) -> GroupHom:
        """Sum over ``C_{p^{k+1}}/C_{p^k}`` acting on level k."""
        c = self.index(k + 1)
        out = GroupHom.zero(self.levels[k], self.levels[k])
        for j in range(self.p):
            out = out + self.weyl_power(k, c * j)
        return out

    def __repr__(self) -> str:
        nm = f"{self.name} " if self.name else ""
        return f"<MackeyFunctor {nm}{self.group} levels={[str(g) for g in self.levels]}>"


def check_axioms(m: MackeyFunctor) -> AxiomReport:
    """Verify every structural identity of a Mackey functor for a cyclic p-group."""
    rep = AxiomReport()
    for k in range(m.height + 1):
        w = m.weyl[k]
        if not w.is_iso():
            rep.failures.append(f"level {k}: Weyl generator is not an automorphism")
        if not m.weyl_power(k, 0).equals((w ** m.index(k))):
            rep.failures.append(f"level {k}: weyl^{m.index(k)} != id")
    for k in range(1, m.height + 1):
        r, t = m.res[k], m.tr[k]
        wk, wl = m.weyl[k], m.weyl[k - 1]
        if not (r @ wk).equals(wl @ r):
            rep.failures.append(f"edge {k}->{k - 1}: res does not commute with Weyl action")
        if not (t @ wl).equals(wk @ t):
            rep.failures.append(f"edge {k - 1}->{k}: tr does not commute with Weyl action")
        c = m.index(k)
        if not (m.weyl[k - 1] ** c @ r).equals(r):
            rep.failures.append(f"edge {k}->{k - 1}: image of res not invariant under C_{{p^{k}}}")
        if not (t @ (m.weyl[k - 1] ** c)).equals(t):
            rep.failures.append(f"edge {k - 1}->{k}: tr not invariant under C_{{p^{k}}}")
        if not (r @ t).equals(m.weyl_sum(k - 1)):
            rep.failures.append(f"edge {k}: double coset formula res o tr = Weyl sum fails")
    return rep


def evaluate_span(m: MackeyFunctor, s: SpanClass | dict) -> GroupHom:
    """Value of a Burnside-category morphism ``G/H -> G/K``.

    The span ``G/H <- G/L -> G/K`` with label ``b`` evaluates to
    ``tr_L^K o g^b o res_L^H``.  Formal combinations (dicts) evaluate linearly.
    """
    if isinstance(s, dict):
        out = None
        for sp, c in s.items():
            v = evaluate_span(m, sp) * c
            out = v if out is None else out + v
        if out is None:
            raise MackeyError("empty combination has no source/target")
        return out
    if s.n != m.n:
        raise MackeyError(f"span for C{s.n} evaluated on a functor for {m.group}")
    h, l, k = m.level_of(s.source), m.level_of(s.middle), m.level_of(s.target)
    return m.tr_between(l, k) @ m.weyl_power(l, s.label) @ m.res_between(h, l)


def mackey_direct_sum(ms: list[MackeyFunctor]) -> tuple[MackeyFunctor, list["MackeyMorphism"], list["MackeyMorphism"]]:
    """Direct sum with inclusions and projections."""
    g = ms[0].group
    H = ms[0].height
    levels = [direct_sum([m.levels[k] for m in ms]) for k in range(H + 1)]

    def block(getter, src_k, tgt_k):
        out = zeros(levels[tgt_k].ngens, levels[src_k].ngens)
        i = j = 0
        for m in ms:
            a = getter(m).matrix
            out[i:i + a.shape[0], j:j + a.shape[1]] = a
            i += a.shape[0]
            j += a.shape[1]
        return out

    res = {k: block(lambda m: m.res[k], k, k - 1) for k in range(1, H + 1)}
    tr = {k: block(lambda m: m.tr[k], k - 1, k) for k in range(1, H + 1)}
    weyl = {k: block(lambda m: m.weyl[k], k, k) for k in range(H + 1)}
    s = MackeyFunctor(g, levels, res, tr, weyl, check=False)
    incs, projs = [], []
    off = [0] * (H + 1)
    for m in ms:
        inc, prj = {}, {}
        for k in range(H + 1):
            a = m.levels[k].ngens
            im = zeros(levels[k].ngens, a)
            pm = zeros(a, levels[k].ngens)
            for t in range(a):
                im[off[k] + t, t] = 1
                pm[t, off[k] + t] = 1
            inc[k], prj[k] = im, pm
            off[k] += a
        incs.append(MackeyMorphism(m, s, inc, check=False))
        projs.append(MackeyMorphism(s, m, prj, check=False))
    return s, incs, projs


def zero_mackey(group: CyclicGroup) -> MackeyFunctor:
    pk = group.prime_power
    z = FGAbelianGroup.zero()
    H = pk[1]
    return MackeyFunctor(
        group, [z] * (H + 1),
        {k: zeros(0, 0) for k in range(1, H + 1)},
        {k: zeros(0, 0) for k in range(1, H + 1)},
        check=False, name="0",
    )


class MackeyMorphism:
    """Levelwise homomorphisms commuting with res, tr and the Weyl action."""

    def __init__(self, source: MackeyFunctor, target: MackeyFunctor, maps, check: bool = True):
        if source.group != target.group:
            raise MackeyError("morphism between functors for different groups")
        self.source = source
        self.target = target
        H = source.height
        self.maps: dict[int, GroupHom] = {}
        for k in range(H + 1):
            f = maps[k]
            if isinstance(f, GroupHom):
                self.maps[k] = f
            else:
                self.maps[k] = GroupHom(source.levels[k], target.levels[k],
                                        int_matrix(f, target.levels[k].ngens, source.levels[k].ngens),
                                        check=check)
        if check:
            bad = self.commutation_failures()
            if bad:
                raise MackeyError("not a Mackey morphism: " + "; ".join(bad))

    def commutation_failures(self) -> list[str]:
        s, t, f = self.source, self.target, self.maps
        out = []
        for k in range(s.height + 1):
            if not (f[k] @ s.weyl[k]).equals(t.weyl[k] @ f[k]):
                out.append(f"Weyl action at level {k}")
        for k in range(1, s.height + 1):
            if not (f[k - 1] @ s.res[k]).equals(t.res[k] @ f[k]):
                out.append(f"res {k}->{k - 1}")
            if not (f[k] @ s.tr[k]).equals(t.tr[k] @ f[k - 1]):
                out.append(f"tr {k - 1}->{k}")
        return out

    @classmethod
    def identity(cls, m: MackeyFunctor) -> "MackeyMorphism":
        return cls(m, m, {k: GroupHom.identity(g) for k, g in enumerate(m.levels)}, check=False)

    @classmethod
    def zero(cls, s: MackeyFunctor, t: MackeyFunctor) -> "MackeyMorphism":
        return cls(s, t, {k: GroupHom.zero(s.levels[k], t.levels[k]) for k in range(s.height + 1)}, check=False)

    def __matmul__(self, other: "MackeyMorphism") -> "MackeyMorphism":
        return MackeyMorphism(other.source, self.target,
                              {k: self.maps[k] @ other.maps[k] for k in self.maps}, check=False)

    def __add__(self, other):
        return MackeyMorphism(self.source, self.target,
                              {k: self.maps[k] + other.maps[k] for k in self.maps}, check=False)

    def __sub__(self, other):
        return MackeyMorphism(self.source, self.target,
                              {k: self.maps[k] - other.maps[k] for k in self.maps}, check=False)

    def __mul__(self, c: int):
        return MackeyMorphism(self.source, self.target, {k: f * c for k, f in self.maps.items()}, check=False)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def equals(self, other: "MackeyMorphism") -> bool:
        return all(self.maps[k].equals(other.maps[k]) for k in self.maps)

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.maps.values())

    def is_iso(self) -> bool:
        return all(f.is_iso() for f in self.maps.values())

    def kernel(self) -> tuple[MackeyFunctor, "MackeyMorphism"]:
        return mackey_kernel(self)

    def cokernel(self) -> tuple[MackeyFunctor, "MackeyMorphism", dict[int, np.ndarray]]:
        return mackey_cokernel(self)

    def image(self) -> tuple[MackeyFunctor, "MackeyMorphism"]:
        return mackey_image(self)


def _require_morphism(f: MackeyMorphism):
    bad = f.commutation_failures()
    if bad:
        raise MackeyError("not a Mackey morphism: " + "; ".join(bad))


def _induced_on_sub(m: MackeyFunctor, subs: list[FGAbelianGroup], incs: list[GroupHom], name: str):
    H = m.height
    res = {k: lift_through(incs[k - 1], m.res[k] @ incs[k]) for k in range(1, H + 1)}
    tr = {k: lift_through(incs[k], m.tr[k] @ incs[k - 1]) for k in range(1, H + 1)}
    weyl = {k: lift_through(incs[k], m.weyl[k] @ incs[k]) for k in range(H + 1)}
    sub = MackeyFunctor(m.group, subs, res, tr, weyl, check=False, name=name)
    inc = MackeyMorphism(sub, m, {k: GroupHom(subs[k], m.levels[k], incs[k].matrix, check=False)
                                  for k in range(H + 1)}, check=False)
    return sub, inc


def mackey_kernel(f: MackeyMorphism) -> tuple[MackeyFunctor, MackeyMorphism]:
    _require_morphism(f)
    pieces = [hom_kernel(f.maps[k]) for k in range(f.source.height + 1)]
    return _induced_on_sub(f.source, [p[0] for p in pieces], [p[1] for p in pieces], "ker")


def mackey_image(f: MackeyMorphism) -> tuple[MackeyFunctor, MackeyMorphism]:
    _require_morphism(f)
    pieces = [hom_image(f.maps[k]) for k in range(f.source.height + 1)]
    return _induced_on_sub(f.target, [p[0] for p in pieces], [p[1] for p in pieces], "im")


def quotient_by_generators(m: MackeyFunctor, gens: dict[int, np.ndarray], name: str = "quot"):
    """Quotient of ``m`` by subgroups generated levelwise by ``gens``.

    The generated subgroups must already form a sub-Mackey functor.  Returns
    ``(quotient, projection, lifts)`` where ``lifts[k]`` sends quotient
    generators to representatives in ``m``.
    """
    from .abelian import cokernel_of_relations

    H = m.height
    qs, projs, lifts = [], [], {}
    for k in range(H + 1):
        lv = m.levels[k]
        g = gens.get(k)
        rel = lv.relations if g is None or g.shape[1] == 0 else np.concatenate([lv.relations, g], axis=1)
        orders, proj, lift = cokernel_of_relations(lv.ngens, rel)
        q = FGAbelianGroup.cyclic(*orders)
        qs.append(q)
        projs.append(GroupHom(lv, q, proj, check=False))
        lifts[k] = lift
    res = {k: imatmul(projs[k - 1].matrix, m.res[k].matrix, lifts[k]) for k in range(1, H + 1)}
    tr = {k: imatmul(projs[k].matrix, m.tr[k].matrix, lifts[k - 1]) for k in range(1, H + 1)}
    weyl = {k: imatmul(projs[k].matrix, m.weyl[k].matrix, lifts[k]) for k in range(H + 1)}
    res = {k: GroupHom(qs[k], qs[k - 1], v, check=False) for k, v in res.items()}
    tr = {k: GroupHom(qs[k - 1], qs[k], v, check=False) for k, v in tr.items()}
    weyl = {k: GroupHom(qs[k], qs[k], v, check=False) for k, v in weyl.items()}
    q = MackeyFunctor(m.group, qs, res, tr, weyl, check=False, name=name)
    proj = MackeyMorphism(m, q, {k: projs[k] for k in range(H + 1)}, check=False)
    return q, proj, lifts


def mackey_cokernel(f: MackeyMorphism):
    """Cokernel with projection and per-level lifts of its generators."""
    _require_morphism(f)
    return quotient_by_generators(f.target, {k: f.maps[k].matrix for k in f.maps}, name="coker")


def generated_submackey(m: MackeyFunctor, seed_levels) -> tuple[MackeyFunctor, MackeyMorphism]:
    """Smallest sub-Mackey functor containing the given levels entirely.

    ``seed_levels`` is an iterable of level indices.  Saturates under
    restriction, transfer and the Weyl action.
    """
    H = m.height
    gens = {k: zeros(m.levels[k].ngens, 0) for k in range(H + 1)}
    for k in seed_levels:
        gens[k] = identity(m.levels[k].ngens)

    def contains(k, vecs):
        g = m.levels[k]
        span = np.concatenate([g.relations, gens[k]], axis=1)
        return FGAbelianGroup(g.ngens, span).contains_all(vecs)

    changed = True
    while changed:
        changed = False
        for k in range(H + 1):
            cands = []
            if gens[k].shape[1]:
                cands.append((k, m.weyl[k].matrix @ gens[k]))
                if k >= 1:
                    cands.append((k - 1, m.res[k].matrix @ gens[k]))
                if k < H:
                    cands.append((k + 1, m.tr[k + 1].matrix @ gens[k]))
            for tgt, vecs in cands:
                for j in range(vecs.shape[1]):
                    v = vecs[:, j:j + 1]
                    if not contains(tgt, v):
                        gens[tgt] = np.concatenate([gens[tgt], m.levels[tgt].reduce(v)], axis=1)
                        changed = True
    pieces = [subgroup_from_generators(m.levels[k], gens[k]) for k in range(H + 1)]
    return _induced_on_sub(m, [p[0] for p in pieces], [p[1] for p in pieces], "gen")
