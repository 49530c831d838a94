"""Graded Mackey functors, the graded twisted nerve, Koszul Tor and the E2-term
for ``MU_R``.

Two grading modes are supported:

* ``Z``-graded: switch sign ``(-1)^{ij}``; the last face of the nerve carries
  ``(-1)^{i_q (i_0 + ... + i_{q-1})}``.
* ``RO(C_2)``-graded over the formal base ``HF_2``: characteristic 2, trivial
  switch units.  Free presentations are handled symbolically and their
  ranks cross-checked against bar complexes over ``F_2`` in weight-graded
  truncations (every degree in play is a multiple of ``rho``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .abelian import zeros
from .box import MultiBox
from .green import GreenFunctor, TwistTag, _col, _pairing_matrix
from .hochschild import BudgetExceeded, SimplicialMackey, hh_twisted, normalized_complex
from .mackey import MackeyError, MackeyFunctor, MackeyMorphism, mackey_direct_sum, zero_mackey

__all__ = [
    "rotating_iso_z",
    "ROC2Degree",
    "RHO",
    "ZGradedMackey",
    "graded_box",
    "GradedGreen",
    "graded_twisted_nerve",
    "hh_graded",
    "SwitchSignTable",
    "Generator",
    "GradedPresentation",
    "check_graded_commutative",
    "CommutativityReport",
    "koszul_tor",
    "e2_presentation_mur",
    "monomial_basis",
    "collapse_check",
    "CollapseReport",
    "bar_tor_ranks",
    "hochschild_ranks_polynomial",
    "rank_mod_p",
    "hh_eq_tor_check",
    "tor_two_sided_bar",
]


def rotating_iso_z(a_deg: int, b_deg: int) -> int:
    """Sign of ``a (x) b -> b (x) a`` for Z-graded objects."""
    return -1 if (a_deg * b_deg) % 2 else 1


@dataclass(frozen=True, order=True)
class ROC2Degree:
    """``a + b sigma`` in ``RO(C_2)``."""

    a: int
    b: int

    def __add__(self, other: "ROC2Degree") -> "ROC2Degree":
        return ROC2Degree(self.a + other.a, self.b + other.b)

    def __mul__(self, k: int) -> "ROC2Degree":
        return ROC2Degree(self.a * k, self.b * k)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return f"({self.a},{self.b})"

    @classmethod
    def parse(cls, s: str) -> "ROC2Degree":
        a, b = s.strip().strip("()").split(",")
        return cls(int(a), int(b))

    @property
    def rho_multiple(self) -> int | None:
        return self.a if self.a == self.b else None


RHO = ROC2Degree(1, 1)


# ---------------------------------------------------------------------------
# Z-graded Mackey functors

class ZGradedMackey:
    """Finitely supported Z-graded Mackey functor, known in degrees ``<= top``.

    Components are known to vanish below ``lo``.  ``top = None`` means the
    listed support is the whole functor.
    """

    def __init__(self, group, components: dict[int, MackeyFunctor], lo: int | None = None,
                 top: int | None = None):
        self.group = group
        self.components = {d: m for d, m in components.items() if not m.is_zero()}
        self.lo = lo if lo is not None else min(self.components, default=0)
        self.top = top

    def __getitem__(self, d: int) -> MackeyFunctor:
        if self.top is not None and d > self.top:
            raise BudgetExceeded(f"degree {d} is beyond the truncation {self.top}")
        m = self.components.get(d)
        if m is None:
            return zero_mackey(self.group)
        return m

    @property
    def support(self) -> list[int]:
        return sorted(self.components)

    def known_up_to(self) -> int | None:
        return self.top

    def ranks(self) -> dict[int, list]:
        return {d: self.components[d].ranks() for d in self.support}

    def __repr__(self) -> str:
        return f"<ZGradedMackey over {self.group} degrees {self.support}>"


def graded_box(m: ZGradedMackey, n: ZGradedMackey, window: tuple[int, int]) -> ZGradedMackey:
    """``(m box n)_q = (+)_{i+j=q} m_i box n_j`` for ``q`` in ``window``."""
    lo, hi = window
    if m.group != n.group:
        raise MackeyError("graded box of functors for different groups")
    limits = []
    if m.top is not None:
        limits.append(m.top + n.lo)
    if n.top is not None:
        limits.append(n.top + m.lo)
    if limits and hi > min(limits):
        raise BudgetExceeded(f"window top {hi} exceeds the known range {min(limits)}")
    out = {}
    for q in range(lo, hi + 1):
        parts = [MultiBox([m.components[i], n.components[q - i]]).mackey
                 for i in m.support if (q - i) in n.components]
        if parts:
            out[q] = mackey_direct_sum(parts)[0] if len(parts) > 1 else parts[0]
    return ZGradedMackey(m.group, out, lo=m.lo + n.lo, top=hi)


# ---------------------------------------------------------------------------
# graded Green functors and the graded twisted nerve

class GradedGreen:
    """Nonnegatively Z-graded Green functor.

    ``mult[(i, j)][l]`` is a pairing ``R_i(l) (x) R_j(l) -> R_{i+j}(l)``
    (missing pairs are zero); ``unit[l]`` lies in ``R_0(l)``.
    """

    def __init__(self, components: dict[int, MackeyFunctor], mult: dict, unit: dict, name: str = ""):
        if not components or min(components) < 0:
            raise ValueError("components must be nonnegatively graded")
        self.components = components
        self.group = next(iter(components.values())).group
        self.height = next(iter(components.values())).height
        if 0 not in components:
            raise ValueError("degree 0 component required for the unit")
        lv = {d: m.levels for d, m in components.items()}
        self.mult = {
            (i, j): {l: _pairing_matrix(mu, lv[i + j][l].ngens, lv[i][l].ngens, lv[j][l].ngens)
                     for l, mu in pairing.items()}
            for (i, j), pairing in mult.items() if i + j in components
        }
        self.unit = {l: _col(u) if lv[0][l].ngens else zeros(0, 1) for l, u in unit.items()}
        self.name = name

    @classmethod
    def concentrated(cls, R: GreenFunctor) -> "GradedGreen":
        return cls({0: R.mackey}, {(0, 0): R.mult}, R.unit, name=R.name)

    def pairing(self, i: int, j: int, l: int) -> np.ndarray | None:
        return self.mult.get((i, j), {}).get(l) if (i + j) in self.components else None

    @property
    def support(self) -> list[int]:
        return sorted(self.components)


def _tuples(support: list[int], length: int, total: int):
    for t in itertools.product(support, repeat=length):
        if sum(t) == total:
            yield t


def graded_twisted_nerve(R: GradedGreen, internal: int, q_max: int, t: TwistTag | None = None,
                         sign: bool = True) -> SimplicialMackey:
    """Internal-degree ``internal`` part of the Z-graded twisted cyclic nerve
    of ``R`` with coefficients in ``R`` itself."""
    t = t if t is not None else TwistTag.generator(R.group.order)
    sup = R.support
    comps = R.components
    summands: list[list[tuple[int, ...]]] = []
    boxes: list[dict[tuple[int, ...], MultiBox]] = []
    sums, incs, projs = [], [], []
    for q in range(q_max + 1):
        keys = list(_tuples(sup, q + 1, internal))
        bx = {}
        for k in keys:
            bx[k] = MultiBox([comps[i] for i in k])
        summands.append(keys)
        boxes.append(bx)
        if keys:
            s, ins, prs = mackey_direct_sum([bx[k].mackey for k in keys])
        else:
            s, ins, prs = zero_mackey(R.group), [], []
        sums.append(s)
        incs.append(dict(zip(keys, ins)))
        projs.append(dict(zip(keys, prs)))

    def weyl_pow(i, l):
        return comps[i].weyl_power(l, t.exponent).matrix

    def assemble(q_src, q_tgt, local):
        total = MackeyMorphism.zero(sums[q_src], sums[q_tgt])
        for key in summands[q_src]:
            res = local(key)
            if res is None:
                continue
            key2, f = res
            if key2 not in incs[q_tgt]:
                continue
            total = total + incs[q_tgt][key2] @ f @ projs[q_src][key]
        return total

    def terms(v):
        return [(int(s), v[s, 0]) for s in np.nonzero(v[:, 0])[0]]

    faces, degens = {}, {}
    for q in range(1, q_max + 1):
        for i in range(q + 1):
            def local(key, i=i, q=q):
                if i < q:
                    a, b = key[i], key[i + 1]
                    key2 = key[:i] + (a + b,) + key[i + 2:]
                    if key2 not in boxes[q - 1]:
                        return None
                    na, nb = comps[a], comps[b]

                    def f(l, tt):
                        mu = R.pairing(a, b, l)
                        if mu is None:
                            return {}
                        v = mu[:, [tt[i] * nb.levels[l].ngens + tt[i + 1]]]
                        return {tt[:i] + (s,) + tt[i + 2:]: c for s, c in terms(v)}
                else:
                    a, b = key[-1], key[0]
                    key2 = (a + b,) + key[1:-1]
                    if key2 not in boxes[q - 1]:
                        return None
                    sg = rotating_iso_z(a, sum(key[:-1])) if sign else 1
                    nb = comps[b]

                    def f(l, tt):
                        mu = R.pairing(a, b, l)
                        if mu is None:
                            return {}
                        ga = weyl_pow(a, l)[:, tt[-1]].reshape(-1, 1)
                        eb = zeros(nb.levels[l].ngens, 1)
                        eb[tt[0], 0] = 1
                        v = mu @ np.kron(ga, eb)
                        return {(s,) + tt[1:-1]: sg * c for s, c in terms(v)}
                return key2, boxes[q][key].pure_map(boxes[q - 1][key2], f)

            faces[(q, i)] = assemble(q, q - 1, local)
    for q in range(q_max):
        for i in range(q + 1):
            def local(key, i=i, q=q):
                key2 = key[:i + 1] + (0,) + key[i + 1:]

                def f(l, tt):
                    u = R.unit[l]
                    return {tt[:i + 1] + (s,) + tt[i + 1:]: c for s, c in terms(u)}
                return key2, boxes[q][key].pure_map(boxes[q + 1][key2], f)

            degens[(q, i)] = assemble(q, q + 1, local)
    return SimplicialMackey(sums, faces, degens, name=f"B^cy({R.name})_{internal}")


def hh_graded(R: GradedGreen | GreenFunctor, degrees: int, internal: list[int] | None = None,
              check: bool = False) -> list[ZGradedMackey]:
    """``HH^G_i(R_*)`` for ``i <= degrees`` as Z-graded Mackey functors."""
    if isinstance(R, GreenFunctor):
        R = GradedGreen.concentrated(R)
    internal = internal if internal is not None else [0]
    per_internal = {}
    for d in internal:
        nerve = graded_twisted_nerve(R, d, degrees + 1)
        if check:
            bad = nerve.identity_failures()
            if bad:
                raise MackeyError("graded nerve violates simplicial identities: " + bad[0])
        C = normalized_complex(nerve)
        per_internal[d] = [C.homology(i) for i in range(degrees + 1)]
    return [ZGradedMackey(R.group, {d: per_internal[d][i] for d in internal}, top=max(internal))
            for i in range(degrees + 1)]


# ---------------------------------------------------------------------------
# switch signs and presentations

class SwitchSignTable:
    """Units ``sigma(alpha, beta)`` for the rotating isomorphism.

    ``mode`` is ``"z"`` (``(-1)^{ij}``), ``"char2"`` (identity) or
    ``"general"`` with an explicit ``table`` keyed by degree pairs.
    """

    def __init__(self, mode: str = "z", table: dict | None = None):
        if mode not in ("z", "char2", "general"):
            raise ValueError(f"unknown sign mode {mode!r}")
        if mode == "general" and table is None:
            raise ValueError("general mode needs an explicit table")
        self.mode = mode
        self.table = table or {}

    def sign(self, a, b) -> int:
        if self.mode == "char2":
            return 1
        if self.mode == "z":
            return rotating_iso_z(int(a), int(b))
        return self.table[(a, b)]

    def failures(self, degrees) -> list[str]:
        out = []
        for a in degrees:
            for b in degrees:
                try:
                    if self.sign(a, b) * self.sign(b, a) != 1:
                        out.append(f"sigma({a},{b}) sigma({b},{a}) != 1")
                except KeyError:
                    out.append(f"sigma({a},{b}) missing")
        if self.mode == "z":
            for a, b, c in itertools.product(degrees, repeat=3):
                if self.sign(a, b + c) != self.sign(a, b) * self.sign(a, c):
                    out.append(f"sign not bilinear at ({a},{b}+{c})")
        return out


@dataclass(frozen=True)
class Generator:
    name: str
    kind: str  # "poly" or "ext"
    filtration: int
    degree: ROC2Degree | int

    def __post_init__(self):
        if self.kind not in ("poly", "ext"):
            raise ValueError(f"generator kind must be poly or ext, got {self.kind!r}")
        if self.filtration < 0:
            raise ValueError("filtration must be nonnegative")

    def to_json(self) -> dict:
        return {"name": self.name, "kind": self.kind, "filtration": self.filtration, "degree": str(self.degree)}

    @classmethod
    def from_json(cls, d: dict) -> "Generator":
        deg = d["degree"]
        deg = ROC2Degree.parse(deg) if isinstance(deg, str) and "(" in deg else int(deg)
        return cls(d["name"], d["kind"], int(d["filtration"]), deg)


@dataclass
class GradedPresentation:
    """Free graded-commutative algebra over a formal base."""

    base: str
    characteristic: int
    generators: list[Generator] = field(default_factory=list)
    mode: str = "ROC2"  # or "Z"
    signs: SwitchSignTable | None = None

    def __post_init__(self):
        if self.mode == "ROC2":
            if self.characteristic != 2:
                raise ValueError("RO(C_2) mode runs in characteristic 2")
            if self.signs is not None and self.signs.mode != "char2":
                raise ValueError("characteristic-2 mode carries no sign data")
            self.signs = SwitchSignTable("char2")
        elif self.signs is None:
            self.signs = SwitchSignTable("z")

    @property
    def polynomial(self) -> list[Generator]:
        return [g for g in self.generators if g.kind == "poly"]

    @property
    def exterior(self) -> list[Generator]:
        return [g for g in self.generators if g.kind == "ext"]

    def to_json(self) -> dict:
        return {"base": self.base, "characteristic": self.characteristic, "mode": self.mode,
                "generators": [g.to_json() for g in self.generators]}

    @classmethod
    def from_json(cls, d: dict) -> "GradedPresentation":
        return cls(d["base"], int(d["characteristic"]), [Generator.from_json(g) for g in d["generators"]],
                   d.get("mode", "ROC2"))


@dataclass
class CommutativityReport:
    ok: bool
    failures: list[str]


def check_graded_commutative(g) -> CommutativityReport:
    """``mu tau = mu`` on all generator pairs (presentations) or components
    (graded Green functors)."""
    fails = []
    if isinstance(g, GradedPresentation):
        for x in g.generators:
            # x y = sigma y x holds by construction for x != y; x x = sigma x x
            s = g.signs.sign(x.degree, x.degree)
            if s != 1 and x.kind == "poly" and g.characteristic != 2:
                fails.append(f"{x.name}^2 = -{x.name}^2 forces 2 {x.name}^2 = 0 in a polynomial algebra")
        return CommutativityReport(not fails, fails)
    if isinstance(g, GradedGreen):
        for (i, j), pairing in g.mult.items():
            for l, mu in pairing.items():
                if (j, i) not in g.mult:
                    fails.append(f"missing product in degrees ({j},{i})")
                    continue
                other = g.mult[(j, i)][l]
                ni, nj = g.components[i].levels[l].ngens, g.components[j].levels[l].ngens
                swap = zeros(ni * nj, ni * nj)
                for a in range(ni):
                    for b in range(nj):
                        swap[b * ni + a, a * nj + b] = 1
                diff = other @ swap - rotating_iso_z(i, j) * mu
                if not g.components[i + j].levels[l].contains_all(diff):
                    fails.append(f"mu tau != mu in degrees ({i},{j}) at level {l}")
        return CommutativityReport(not fails, fails)
    raise TypeError(f"cannot check {type(g).__name__}")


# ---------------------------------------------------------------------------
# Koszul Tor, the E2-term and the bar-complex oracles

def _weight(deg) -> int:
    if isinstance(deg, ROC2Degree):
        w = deg.rho_multiple
        if w is None:
            raise ValueError(f"degree {deg} is not a multiple of rho")
        return w
    return int(deg)


def _as_degree(w: int, like) -> ROC2Degree | int:
    return RHO * w if isinstance(like, ROC2Degree) else w


def koszul_tor(p: GradedPresentation, truncation: int) -> GradedPresentation:
    """``Tor^{base[b_1,...]}(base, base)`` from the Koszul resolution.

    The Koszul complex ``P (x) Lambda(e_i)``, ``d e_i = b_i``, tensored down to
    the base has zero differential, so Tor is exterior on classes ``z_i`` of
    filtration 1 and the degree of ``b_i``.  Generators above ``truncation``
    (in multiples of ``rho``) are dropped.
    """
    if p.mode != "ROC2" or p.characteristic != 2:
        raise ValueError("koszul_tor runs in characteristic-2 RO(C_2) mode")
    if p.exterior:
        raise ValueError("koszul_tor expects polynomial generators only")
    gens = []
    for b in p.polynomial:
        if _weight(b.degree) <= truncation:
            gens.append(Generator("z" + b.name[1:] if b.name.startswith("b") else "s" + b.name,
                                  "ext", b.filtration + 1, b.degree))
    return GradedPresentation(p.base, 2, gens)


def _mur_input(k_gens: int) -> GradedPresentation:
    """``HF_2`` homology of ``MU_R``: polynomial on ``b_i`` of degree ``i rho``
    (input data, not computed here)."""
    return GradedPresentation("HF2*", 2, [Generator(f"b{i}", "poly", 0, RHO * i) for i in range(1, k_gens + 1)])


def e2_presentation_mur(k_gens: int, truncation: int) -> GradedPresentation:
    """``HF_2*[b_1..b_k] box Lambda(z_1..z_k)`` within ``truncation * rho``."""
    if k_gens < 0:
        raise ValueError("k_gens must be nonnegative")
    poly = _mur_input(k_gens)
    kept = [g for g in poly.generators if _weight(g.degree) <= truncation]
    ext = koszul_tor(GradedPresentation(poly.base, 2, kept), truncation)
    # the box over the formal base of two free presentations is free on the union
    return GradedPresentation(poly.base, 2, kept + ext.generators)


def monomial_basis(p: GradedPresentation, truncation: int) -> list[tuple[dict[str, int], int, ROC2Degree]]:
    """All monomials of total degree ``<= truncation * rho``.

    Returns ``(exponents, filtration, degree)`` triples in a fixed order.
    """
    gens = p.generators
    ws = [_weight(g.degree) for g in gens]
    out = []

    def rec(i, remaining, exps):
        if i == len(gens):
            s = sum(e * g.filtration for e, g in zip(exps, gens))
            w = sum(e * wt for e, wt in zip(exps, ws))
            out.append(({g.name: e for g, e in zip(gens, exps) if e}, s, RHO * w))
            return
        top = 1 if gens[i].kind == "ext" else (remaining // ws[i] if ws[i] else 0)
        if ws[i] == 0 and gens[i].kind == "poly":
            raise ValueError("degree-zero polynomial generator gives an infinite basis")
        for e in range(0, min(top, remaining // ws[i] if ws[i] else 1) + 1):
            rec(i + 1, remaining - e * ws[i], exps + [e])

    rec(0, truncation, [])
    out.sort(key=lambda m: (m[1], m[2].a, sorted(m[0].items())))
    return out


@dataclass
class CollapseReport:
    collapses: bool
    offending: list[str]
    statement: str
    e_infinity: GradedPresentation | None


def collapse_check(p: GradedPresentation) -> CollapseReport:
    """Collapse at E2 when every algebra generator has filtration <= 1.

    ``d^r`` changes ``(s, a, b)`` to ``(s - r, a + r - 1, b)`` with ``r >= 2``,
    so it vanishes on generators of filtration at most 1 and hence, being a
    derivation, everywhere.
    """
    if not check_graded_commutative(p).ok:
        raise ValueError("collapse_check needs a graded-commutative presentation")
    bad = [g.name for g in p.generators if g.filtration > 1]
    if bad:
        return CollapseReport(False, bad, "generators in filtration >= 2: " + ", ".join(bad), None)
    stmt = ("all generators in filtration <= 1; d^r: E^r_{s,a,b} -> E^r_{s-r,a+r-1,b} (r >= 2) "
            "vanishes on generators, so E^infinity = E^2")
    return CollapseReport(True, [], stmt, p)


def rank_mod_p(m: np.ndarray, p: int) -> int:
    """Rank of an integer matrix over ``F_p``."""
    a = np.array(m, dtype=np.int64) % p
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i, c]), None)
        if piv is None:
            continue
        a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        r += 1
        if r == rows:
            break
    return r


def _monomials(weights: list[int], max_w: int):
    """Exponent tuples of nonconstant monomials by weight."""
    by_w: dict[int, list[tuple[int, ...]]] = {}
    for exps in itertools.product(*[range(max_w // w + 1) for w in weights]):
        w = sum(e * wt for e, wt in zip(exps, weights))
        if 0 < w <= max_w:
            by_w.setdefault(w, []).append(exps)
    return by_w


def _sequences(by_w, length, total):
    """Tuples of ``length`` nonconstant monomials with total weight ``total``."""
    if length == 0:
        if total == 0:
            yield ()
        return
    for w in range(1, total - length + 2):
        for m in by_w.get(w, []):
            for rest in _sequences(by_w, length - 1, total - w):
                yield (m,) + rest


def _mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def bar_tor_ranks(weights: list[int], max_w: int, p: int = 2) -> dict[tuple[int, int], int]:
    """``dim Tor_s^{F_p[b]}(F_p, F_p)`` in weight ``w`` from the reduced bar complex."""
    by_w = _monomials(weights, max_w)
    out = {}
    for w in range(0, max_w + 1):
        basis = {s: list(_sequences(by_w, s, w)) for s in range(0, w + 2)}
        index = {s: {b: i for i, b in enumerate(basis[s])} for s in basis}

        def d(s):
            m = np.zeros((len(basis[s - 1]), len(basis[s])), dtype=np.int64)
            for j, seq in enumerate(basis[s]):
                for i in range(s - 1):
                    t = seq[:i] + (_mul(seq[i], seq[i + 1]),) + seq[i + 2:]
                    m[index[s - 1][t], j] += (-1) ** (i + 1)
            return m

        ranks = {s: rank_mod_p(d(s), p) if basis[s] and basis[s - 1] else 0 for s in range(1, w + 2)}
        for s in range(0, w + 1):
            dim = len(basis[s])
            r_out = ranks.get(s, 0) if s >= 1 else 0
            h = dim - r_out - ranks.get(s + 1, 0)
            if h:
                out[(s, w)] = h
    return out


def hochschild_ranks_polynomial(weights: list[int], max_w: int, p: int = 2) -> dict[tuple[int, int], int]:
    """``dim HH_s(F_p[b])`` in weight ``w`` from the normalized Hochschild complex."""
    by_w = _monomials(weights, max_w)
    one = tuple(0 for _ in weights)
    by_w_all = dict(by_w)
    by_w_all[0] = [one]
    out = {}
    for w in range(0, max_w + 1):
        basis = {}
        for s in range(0, w + 2):
            b = []
            for w0 in range(0, w + 1):
                for m0 in by_w_all.get(w0, []):
                    for rest in _sequences(by_w, s, w - w0):
                        b.append((m0,) + rest)
            basis[s] = b
        index = {s: {b: i for i, b in enumerate(basis[s])} for s in basis}

        def d(s):
            m = np.zeros((len(basis[s - 1]), len(basis[s])), dtype=np.int64)
            for j, seq in enumerate(basis[s]):
                for i in range(s):
                    t = seq[:i] + (_mul(seq[i], seq[i + 1]),) + seq[i + 2:]
                    if i > 0 and t[i] == one:
                        continue
                    m[index[s - 1][t], j] += (-1) ** i
                t = (_mul(seq[s], seq[0]),) + seq[1:s]
                m[index[s - 1][t], j] += (-1) ** s
            return m

        ranks = {s: rank_mod_p(d(s), p) if basis[s] and basis[s - 1] else 0 for s in range(1, w + 2)}
        for s in range(0, w + 1):
            h = len(basis[s]) - (ranks.get(s, 0) if s else 0) - ranks.get(s + 1, 0)
            if h:
                out[(s, w)] = h
    return out


# ---------------------------------------------------------------------------
# HH = Tor

def tor_two_sided_bar(M: GreenFunctor, degrees: int, t: TwistTag | None = None) -> list[MackeyFunctor]:
    """``Tor^{M box M^op}_i(^gM, M)`` from the two-sided bar resolution.

    ``Bar_q = M^{box (q+2)}`` resolves M (M is free over the Burnside base in
    the cases used).  Tensoring with the twisted module is computed as the
    cokernel of the two ``M box M^op``-actions on ``^gM box Bar_q``, with
    ``m.(a (x) b) = (g b) m a``.
    """
    from .hochschild import MackeyChainComplex
    from .mackey import mackey_cokernel

    t = t if t is not None else TwistTag.generator(M.mackey.n)
    R = M.mackey
    nr = lambda l: R.levels[l].ngens  # noqa: E731

    def terms(v):
        return [(int(s), v[s, 0]) for s in np.nonzero(v[:, 0])[0]]

    def mul(l, a, b):
        return M.mult[l][:, [a * nr(l) + b]]

    chain = [MultiBox([R])]
    top = degrees + 1
    while chain[-1].arity < top + 5:
        chain.append(chain[-1].extend(R))

    def mb(k):
        return chain[k - 1]

    objs, projs, lifts = [], [], []
    for q in range(top + 1):
        src, tgt = mb(q + 5), mb(q + 3)  # (m, a, b, x_0..x_{q+1}) -> (m, x_0..x_{q+1})

        def on_bar(l, tt):
            m_, a, b, xs = tt[0], tt[1], tt[2], tt[3:]
            out = {}
            for s1, c1 in terms(mul(l, a, xs[0])):
                for s2, c2 in terms(mul(l, xs[-1], b)):
                    key = (m_, s1) + xs[1:-1] + (s2,)
                    out[key] = out.get(key, 0) + c1 * c2
            return out

        def on_module(l, tt):
            m_, a, b, xs = tt[0], tt[1], tt[2], tt[3:]
            gb = R.weyl_power(l, t.exponent).matrix[:, [b]]
            out = {}
            for s, c in terms(gb):
                for s2, c2 in terms(mul(l, s, m_)):
                    for s3, c3 in terms(mul(l, s2, a)):
                        key = (s3,) + xs
                        out[key] = out.get(key, 0) + c * c2 * c3
            return out

        f = src.pure_map(tgt, on_bar) - src.pure_map(tgt, on_module)
        Q, P, L = mackey_cokernel(f)
        objs.append(Q)
        projs.append(P)
        lifts.append(L)
    diffs = {}
    for q in range(1, top + 1):
        src, tgt = mb(q + 3), mb(q + 2)
        parts = []
        for i in range(q + 1):
            def face(l, tt, i=i):
                xs = tt[1:]
                v = mul(l, xs[i], xs[i + 1])
                return {(tt[0],) + xs[:i] + (s,) + xs[i + 2:]: c for s, c in terms(v)}
            parts.append(src.pure_map(tgt, face) * ((-1) ** i))
        D = parts[0]
        for p_ in parts[1:]:
            D = D + p_
        maps = {k: projs[q - 1].maps[k].matrix @ D.maps[k].matrix @ lifts[q][k] for k in range(R.height + 1)}
        diffs[q] = MackeyMorphism(objs[q], objs[q - 1], maps, check=True)
    C = MackeyChainComplex(objs, diffs)
    return [C.homology(i) for i in range(degrees + 1)]


@dataclass
class HHTorReport:
    ok: bool
    hh: list
    tor: list
    mismatches: list[int]


def hh_eq_tor_check(M: GreenFunctor, degrees: int, t: TwistTag | None = None) -> HHTorReport:
    """Compare ``HH^G_*(M)`` from the nerve with Tor from the bar resolution."""
    hh = [h.ranks() for h in hh_twisted(M, degrees, t=t)]
    tor = [h.ranks() for h in tor_two_sided_bar(M, degrees, t=t)]
    bad = [i for i in range(degrees + 1) if hh[i] != tor[i]]
    return HHTorReport(not bad, hh, tor, bad)
