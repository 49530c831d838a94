"""Geometric fixed points, the algebraic restriction map and algebraic TR.

The restriction ``HH^{C_{p^n}}_e(r)_k -> HH^{C_{p^{n-1}}}_e(r)_k`` is computed
at chain level.  Every factor of the nerve is a norm ``A / J``; geometric
fixed points kill the free orbit, giving a Green map
``Phi^{C_p} N^{(n)} -> N^{(n-1)}`` that drops the last Burnside coordinate.
It extends factorwise to the box powers, hence to the nerves, and is checked
to commute with every face before homology is taken.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .abelian import FGAbelianGroup, cokernel_of_relations, GroupHom, hom_kernel, lift_through, zeros
from .burnside import CyclicGroup
from .green import RingPresentation, TwistTag
from .hochschild import normalized_complex, twisted_cyclic_nerve
from .box import MultiBox
from .mackey import MackeyError, MackeyFunctor, MackeyMorphism, generated_submackey, quotient_by_generators

__all__ = [
    "ef_quotient",
    "geometric_fixed_points",
    "algebraic_restriction",
    "tr_tower",
    "TRTower",
    "RestrictionData",
    "induced_on_homology",
    "classify_tower",
]


def _check_shape(m: MackeyFunctor):
    pk = m.group.prime_power
    if pk is None or pk[1] < 1:
        raise MackeyError(f"need a nontrivial cyclic p-group, got {m.group}")
    return pk


def ef_quotient(m: MackeyFunctor) -> tuple[MackeyFunctor, MackeyMorphism]:
    """Quotient by the sub-functor generated by the bottom level (the only
    subgroup not containing ``C_p``)."""
    _check_shape(m)
    sub, inc = generated_submackey(m, [0])
    q, proj, _ = quotient_by_generators(m, {k: inc.maps[k].matrix for k in range(m.height + 1)},
                                        name=f"{m.name}/EF")
    return q, proj


def geometric_fixed_points(m: MackeyFunctor) -> MackeyFunctor:
    """``Phi^{C_p} m`` as a Mackey functor for ``C_{p^{n-1}}``."""
    p, n = _check_shape(m)
    q, _ = ef_quotient(m)
    levels = q.levels[1:]
    res = {k - 1: q.res[k] for k in range(2, n + 1)}
    tr = {k - 1: q.tr[k] for k in range(2, n + 1)}
    weyl = {k - 1: q.weyl[k] for k in range(1, n + 1)}
    return MackeyFunctor(CyclicGroup(p ** (n - 1)), levels, res, tr, weyl, check=True,
                         name=f"Phi({m.name})")


# ---------------------------------------------------------------------------
# homology of chain complexes of abelian groups with induced maps

@dataclass
class _Hom:
    group: FGAbelianGroup
    cycles_inc: GroupHom  # Z -> C_k
    proj: np.ndarray  # Z -> H
    lift: np.ndarray  # H gens -> Z


def _homology_data(d_out: GroupHom | None, d_in: GroupHom | None, C: FGAbelianGroup) -> _Hom:
    if d_out is None:
        Z, inc = C, GroupHom.identity(C)
    else:
        Z, inc = hom_kernel(d_out)
    bmat = zeros(Z.ngens, 0) if d_in is None else lift_through(inc, d_in).matrix
    rel = np.concatenate([Z.relations, bmat], axis=1)
    orders, P, S = cokernel_of_relations(Z.ngens, rel)
    return _Hom(FGAbelianGroup.cyclic(*orders), inc, P, S)


def induced_on_homology(src: _Hom, tgt: _Hom, f: np.ndarray) -> GroupHom:
    """Map on homology induced by a chain map component ``f: C_k -> D_k``."""
    cyc = src.cycles_inc.matrix @ src.lift
    mapped = GroupHom(FGAbelianGroup.free(cyc.shape[1]), tgt.cycles_inc.target, f @ cyc, check=False)
    z = lift_through(tgt.cycles_inc, mapped).matrix
    return GroupHom(src.group, tgt.group, tgt.proj @ z, check=True)


# ---------------------------------------------------------------------------

def _phi_factor(Rn, Rm) -> dict[int, np.ndarray]:
    """``Phi^{C_p}`` of a norm at level ``l >= 1`` into the smaller norm at ``l-1``.

    Both are quotients of Burnside functors (point first, free orbit last); the
    map lifts to Burnside coordinates, drops the free orbit and projects.
    """
    out = {}
    for l in range(1, Rn.height + 1):
        src, tgt = Rn.levels[l], Rm.levels[l - 1]
        M = zeros(tgt.ngens, src.ngens)
        for g in range(src.ngens):
            burn = Rn._lift_to_burnside[l][:, g]
            M[:, g] = (Rm._proj_from_burnside[l - 1] @ burn[:l].reshape(-1, 1))[:, 0]
        out[l] = tgt.reduce(M)
    return out


class _NormModel:
    """A norm ``A/J`` with its projection from and a lift to Burnside coordinates."""

    def __init__(self, r: RingPresentation, group: CyclicGroup):
        from .norm import norm_ring

        self.green = norm_ring(r, group).green
        R = self.green.mackey
        self.height = R.height
        self.levels = R.levels
        self._proj_from_burnside, self._lift_to_burnside = {}, {}
        u = self.green.unit_morphism()  # A -> R
        for k in range(R.height + 1):
            P = u.maps[k]
            if not P.is_surjective():
                raise MackeyError("norm is not a quotient of the Burnside functor")
            self._proj_from_burnside[k] = P.matrix
            self._lift_to_burnside[k] = _right_inverse(P)


def _right_inverse(P: GroupHom) -> np.ndarray:
    """Integer matrix S with ``P S = id`` on the target group."""
    from .abelian import _Solver

    solver = _Solver(P.matrix, P.target)
    n = P.target.ngens
    return solver.solve(np.eye(n, dtype=object))


def _pure_phi_map(src: MultiBox, tgt: MultiBox, psi: list[dict[int, np.ndarray]], h: int) -> np.ndarray:
    """Level-``h`` matrix of ``Phi^{C_p} src -> tgt`` (target level ``h-1``)."""
    sec = src.section(h)
    T = tgt.mackey
    out = zeros(T.levels[h - 1].ngens, len(sec))
    trs = {}
    for g, terms in enumerate(sec):
        for (l, t), c in terms.items():
            if l == 0:
                continue  # transfers from the free orbit vanish
            cols = [psi[i][l][:, t[i]] for i in range(len(t))]
            supports = [np.nonzero(col)[0] for col in cols]
            v = zeros(T.levels[l - 1].ngens, 1)
            for choice in product(*supports):
                coeff = c
                for col, s in zip(cols, choice):
                    coeff *= col[s]
                v += coeff * tgt.pure(l - 1, tuple(int(s) for s in choice))
            if l < h:
                key = l
                if key not in trs:
                    trs[key] = T.tr_between(l - 1, h - 1).matrix
                v = trs[key] @ v
            out += _col_at(v, g, len(sec))
    return T.levels[h - 1].reduce(out)


def _col_at(v, g, n):
    m = zeros(v.shape[0], n)
    m[:, g] = v[:, 0]
    return m


@dataclass
class RestrictionData:
    """Chain-level restriction between consecutive nerves and its homology map."""

    p: int
    n: int
    degree: int
    source: FGAbelianGroup
    target: FGAbelianGroup
    map: GroupHom
    chain_map_ok: bool
    chain_maps: dict[int, np.ndarray] = field(default_factory=dict)  # top level, normalized complexes


class _Stage:
    """Nerve, normalized complex and top-level homology of one tower stage."""

    def __init__(self, r: RingPresentation, p: int, n: int, degree: int):
        self.model = _NormModel(r, CyclicGroup(p ** n))
        R = self.model.green
        nerve = twisted_cyclic_nerve(R, R.as_module(), TwistTag.generator(p ** n), degree + 1)
        self.boxes = nerve.boxes
        self.complex = C = normalized_complex(nerve)
        self.top = n
        self.hdata = {}
        for k in range(max(degree - 1, 0), degree + 1):
            d_out = C.diffs[k].maps[n] if k >= 1 else None
            self.hdata[k] = _homology_data(d_out, C.diffs[k + 1].maps[n], C.objects[k].levels[n])

    def homology(self, k: int) -> FGAbelianGroup:
        return self.hdata[k].group


def _restriction(hi: _Stage, lo: _Stage, degree: int, p: int, n: int) -> RestrictionData:
    psi = _phi_factor(hi.model, lo.model)
    top = n
    q_max = degree + 1
    # chain maps on normalized complexes at the top level, degrees up to q_max
    fs = {}
    for q in range(0, q_max + 1):
        raw = _pure_phi_map(hi.boxes[q], lo.boxes[q], [psi] * (q + 1), top)
        fs[q] = lo.complex.projections[q].maps[top - 1].matrix @ raw @ hi.complex.lifts[q][top]
    ok = True
    for q in range(1, q_max + 1):
        lhs = fs[q - 1] @ hi.complex.diffs[q].maps[top].matrix
        rhs = lo.complex.diffs[q].maps[top - 1].matrix @ fs[q]
        if not lo.complex.objects[q - 1].levels[top - 1].contains_all(lhs - rhs):
            ok = False
    if not ok:
        raise MackeyError("restriction is not a chain map")
    f = induced_on_homology(hi.hdata[degree], lo.hdata[degree], fs[degree])
    return RestrictionData(p, n, degree, hi.homology(degree), lo.homology(degree), f, ok, fs)


def _stage(r, p, n, degree):
    return _Stage(r, p, n, degree)


def algebraic_restriction(r: RingPresentation, p: int, n: int, degree: int) -> RestrictionData:
    """``HH^{C_{p^n}}_e(r)_k(top) -> HH^{C_{p^{n-1}}}_e(r)_k(top)``."""
    if n < 1:
        raise ValueError("restriction needs n >= 1")
    return _restriction(_stage(r, p, n, degree), _stage(r, p, n - 1, degree), degree, p, n)


@dataclass
class TRTower:
    ring: RingPresentation
    p: int
    degree: int
    stage_groups: list[FGAbelianGroup]
    transition_maps: dict[int, GroupHom]  # n -> map from stage n to stage n-1
    classification: str = ""
    notes: list[str] = field(default_factory=list)

    @property
    def n_max(self) -> int:
        return len(self.stage_groups) - 1

    def to_json(self) -> dict:
        return {
            "ring": self.ring.name,
            "p": self.p,
            "degree": self.degree,
            "stages": [_inv_json(g) for g in self.stage_groups],
            "transitions": {str(n): [[int(x) for x in row] for row in f.matrix.tolist()]
                            for n, f in sorted(self.transition_maps.items())},
            "classification": self.classification,
        }


def _inv_json(g: FGAbelianGroup):
    r, t = g.invariants
    return [r, list(t)]


def classify_tower(stages: list[FGAbelianGroup], maps: dict[int, GroupHom], p: int) -> str:
    """Symbolic description of the limit pattern shown by the finite tower."""
    if all(g.is_zero() for g in stages):
        return "0"
    nz = [i for i, g in enumerate(stages) if not g.is_zero()]
    if nz and nz[-1] < len(stages) - 1:
        return "eventually zero"
    free = all(g.invariants == (i + 1, ()) for i, g in enumerate(stages))
    if free and all(f.is_surjective() and f.rank() == n for n, f in maps.items()):
        ker_ok = all(hom_kernel(f)[0].invariants == (1, ()) for f in maps.values())
        if ker_ok:
            return "Z^infinity"

    def cyclic_p(g):
        r, t = g.invariants
        if r or len(t) != 1:
            return False
        o = t[0]
        while o % p == 0:
            o //= p
        return o == 1

    if all(cyclic_p(g) for g in stages) and all(f.is_surjective() for f in maps.values()):
        orders = [g.order() for g in stages]
        if all(a < b for a, b in zip(orders, orders[1:])):
            return "pro-p cyclic (consistent with Z_p)"
    return "unclassified"


def tr_tower(r: RingPresentation, p: int, n_max: int, degree: int) -> TRTower:
    """Stages ``n = 0..n_max`` of the algebraic TR tower in one degree."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    stages = [_stage(r, p, n, degree) for n in range(n_max + 1)]
    maps = {}
    for n in range(1, n_max + 1):
        maps[n] = _restriction(stages[n], stages[n - 1], degree, p, n).map
    groups = [s.homology(degree) for s in stages]
    return TRTower(r, p, degree, groups, maps, classify_tower(groups, maps, p))
