"""Cyclic groups, their orbits, the Burnside category and the Burnside ring.

The group ``C_n`` is ``Z/n`` with generator ``1``.  Its subgroups are named by
their order ``d | n``; the orbit ``C_n/C_d`` is modelled as ``Z/(n/d)`` with
``G`` acting by translation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from sympy import factorint

__all__ = [
    "CyclicGroup",
    "Orbit",
    "SpanClass",
    "BurnsideElement",
    "hom_basis",
    "compose",
    "compose_linear",
    "identity_span",
    "restriction_span",
    "transfer_span",
    "weyl_span",
    "burnside_ring_mult",
    "burnside_mackey",
    "burnside_green",
]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class CyclicGroup:
    order: int

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("group order must be positive")

    @property
    def subgroups(self) -> list[int]:
        """Orders of the subgroups, ascending."""
        return [d for d in range(1, self.order + 1) if self.order % d == 0]

    @property
    def prime_power(self) -> tuple[int, int] | None:
        """``(p, k)`` if the order is ``p**k`` (``(1, 0)`` for the trivial group)."""
        if self.order == 1:
            return (1, 0)
        f = factorint(self.order)
        if len(f) != 1:
            return None
        (p, k), = f.items()
        return int(p), int(k)

    @classmethod
    def p_power(cls, p: int, k: int) -> "CyclicGroup":
        return cls(p ** k)

    def orbit(self, stabilizer: int) -> "Orbit":
        return Orbit(self, stabilizer)

    def __str__(self) -> str:
        return f"C{self.order}"


@dataclass(frozen=True)
class Orbit:
    """The orbit ``G/H`` where ``|H| = stabilizer``."""

    group: CyclicGroup
    stabilizer: int

    def __post_init__(self):
        if self.group.order % self.stabilizer:
            raise ValueError(f"{self.stabilizer} does not divide {self.group.order}")

    @property
    def size(self) -> int:
        return self.group.order // self.stabilizer

    def __str__(self) -> str:
        return f"{self.group}/C{self.stabilizer}"


@dataclass(frozen=True, order=True)
class SpanClass:
    """Isomorphism class of a span ``G/H <- G/L -> G/K`` of transitive G-sets.

    The left leg sends the base point to ``0``; ``label`` is the image of the
    base point under the right leg, reduced modulo ``gcd(|G/H|, |G/K|)`` (the
    residual freedom of the diagonal action).
    """

    n: int
    source: int
    middle: int
    target: int
    label: int = 0

    def __post_init__(self):
        n, h, l, k = self.n, self.source, self.middle, self.target
        if n % h or n % k or gcd(h, k) % l:
            raise ValueError(f"invalid span C{h} <- C{l} -> C{k} in C{n}")
        m = gcd(n // h, n // k)
        if not 0 <= self.label < m:
            object.__setattr__(self, "label", self.label % m)

    @property
    def group(self) -> CyclicGroup:
        return CyclicGroup(self.n)

    @classmethod
    def from_labels(cls, n: int, h: int, l: int, k: int, a: int, b: int) -> "SpanClass":
        """Canonical class of the span with leg images ``a`` in G/H and ``b`` in G/K."""
        return cls(n, h, l, k, (b - a) % gcd(n // h, n // k))

    def __str__(self) -> str:
        g = f"C{self.n}"
        return f"[{g}/C{self.source} <- {g}/C{self.middle} -> {g}/C{self.target} ; {self.label}]"


def identity_span(orbit: Orbit) -> SpanClass:
    n, h = orbit.group.order, orbit.stabilizer
    return SpanClass(n, h, h, h, 0)


def restriction_span(n: int, big: int, small: int) -> SpanClass:
    """The span ``G/H <- G/K = G/K`` (K <= H) evaluating to restriction."""
    return SpanClass(n, big, small, small, 0)


def transfer_span(n: int, small: int, big: int) -> SpanClass:
    """The span ``G/K = G/K -> G/H`` (K <= H) evaluating to transfer."""
    return SpanClass(n, small, small, big, 0)


def weyl_span(n: int, h: int, shift: int = 1) -> SpanClass:
    """Translation of ``G/H`` by ``shift`` (the Weyl action of ``g**shift``)."""
    return SpanClass(n, h, h, h, shift)


def hom_basis(s: Orbit, t: Orbit) -> list[SpanClass]:
    """A Z-basis of the Burnside category hom group ``A_G(s, t)``."""
    if s.group != t.group:
        raise ValueError("orbits belong to different groups")
    n, h, k = s.group.order, s.stabilizer, t.stabilizer
    m = gcd(n // h, n // k)
    g = gcd(h, k)
    return [SpanClass(n, h, l, k, b) for l in CyclicGroup(n).subgroups if g % l == 0 for b in range(m)]


def compose(f: SpanClass, g: SpanClass) -> dict[SpanClass, int]:
    """Pullback composite ``g o f`` of ``f: S -> T`` and ``g: T -> V``."""
    if f.n != g.n:
        raise ValueError("spans belong to different groups")
    if f.target != g.source:
        raise ValueError(f"cannot compose: target C{f.target} != source C{g.source}")
    n = f.n
    l1, l2 = f.middle, g.middle
    u1, u2 = n // l1, n // l2
    t = n // f.target
    # f: 0 <- x -> f.label + x ; g: 0 <- y -> g.label + y
    seen = set()
    out: dict[SpanClass, int] = {}
    l = gcd(l1, l2)
    for x in range(u1):
        for y in range(u2):
            if (f.label + x - y) % t or (x, y) in seen:
                continue
            for s in range(n // l):
                seen.add(((x + s) % u1, (y + s) % u2))
            sc = SpanClass.from_labels(n, f.source, l, g.target, x, g.label + y)
            out[sc] = out.get(sc, 0) + 1
    return out


def compose_linear(f: dict[SpanClass, int], g: dict[SpanClass, int]) -> dict[SpanClass, int]:
    """Bilinear extension of :func:`compose` to formal combinations."""
    out: dict[SpanClass, int] = {}
    for a, ca in f.items():
        for b, cb in g.items():
            for c, cc in compose(a, b).items():
                out[c] = out.get(c, 0) + ca * cb * cc
    return {k: v for k, v in out.items() if v}


# ---------------------------------------------------------------------------
# Burnside ring

@dataclass(frozen=True)
class BurnsideElement:
    """Element of A(C_n) in the orbit basis ``[C_n/C_d]``, keyed by ``d``."""

    group: CyclicGroup
    coefficients: tuple[tuple[int, int], ...] = field(default=())

    @classmethod
    def from_dict(cls, group: CyclicGroup, coeffs: dict[int, int]) -> "BurnsideElement":
        for d in coeffs:
            if group.order % d:
                raise ValueError(f"C{d} is not a subgroup of {group}")
        return cls(group, tuple(sorted((d, c) for d, c in coeffs.items() if c)))

    @classmethod
    def orbit(cls, group: CyclicGroup, d: int, coeff: int = 1) -> "BurnsideElement":
        return cls.from_dict(group, {d: coeff})

    @classmethod
    def one(cls, group: CyclicGroup) -> "BurnsideElement":
        return cls.orbit(group, group.order)

    def as_dict(self) -> dict[int, int]:
        return dict(self.coefficients)

    def __add__(self, other: "BurnsideElement") -> "BurnsideElement":
        _same(self, other)
        d = self.as_dict()
        for k, v in other.coefficients:
            d[k] = d.get(k, 0) + v
        return BurnsideElement.from_dict(self.group, d)

    def __mul__(self, other: "BurnsideElement") -> "BurnsideElement":
        return burnside_ring_mult(self, other)

    def marks(self) -> dict[int, int]:
        """Number of ``C_e``-fixed points for each subgroup order ``e``."""
        n = self.group.order
        return {e: sum(c * (n // d) for d, c in self.coefficients if d % e == 0) for e in self.group.subgroups}

    def restrict(self, k: int) -> "BurnsideElement":
        """Restriction to the subgroup of order ``k``."""
        n = self.group.order
        out: dict[int, int] = {}
        for d, c in self.coefficients:
            s = gcd(k, d)
            out[s] = out.get(s, 0) + c * (n // d) // (k // s)
        return BurnsideElement.from_dict(CyclicGroup(k), out)

    def induce(self, n: int) -> "BurnsideElement":
        """Induction ``C_n x_{C_k} (-)`` up to the cyclic group of order ``n``."""
        if n % self.group.order:
            raise ValueError("induction target must contain the group")
        return BurnsideElement.from_dict(CyclicGroup(n), self.as_dict())

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        g = self.group
        return " + ".join(f"{c}[{g}/C{d}]" for d, c in self.coefficients)


def _same(x: BurnsideElement, y: BurnsideElement):
    if x.group != y.group:
        raise ValueError("Burnside elements of different groups")


def burnside_ring_mult(x: BurnsideElement, y: BurnsideElement) -> BurnsideElement:
    """Cartesian product: ``[G/C_a][G/C_b] = (n gcd(a,b) / ab) [G/C_gcd(a,b)]``."""
    _same(x, y)
    n = x.group.order
    out: dict[int, int] = {}
    for a, ca in x.coefficients:
        for b, cb in y.coefficients:
            g = gcd(a, b)
            out[g] = out.get(g, 0) + ca * cb * (n * g // (a * b))
    return BurnsideElement.from_dict(x.group, out)


# ---------------------------------------------------------------------------
# Burnside Mackey and Green functors

def burnside_mackey(group: CyclicGroup):
    """The Burnside Mackey functor of a cyclic p-group."""
    return burnside_green(group).mackey


def burnside_green(group: CyclicGroup):
    """The Burnside Green functor: level ``C_{p^k}`` is A(C_{p^k}) = Z^{k+1}.

    The basis of level k is ``[C_{p^k}/C_{p^j}]`` for ``j = k, k-1, ..., 0``
    (the point first, the free orbit last); restriction
    and induction are computed on finite sets, products by cartesian product.
    """
    from .abelian import FGAbelianGroup, zeros
    from .green import GreenFunctor
    from .mackey import MackeyFunctor

    pk = group.prime_power
    if pk is None:
        raise ValueError(f"{group} is not a cyclic p-group")
    p, top = pk
    orders = [p ** k for k in range(top + 1)]
    levels = [FGAbelianGroup.free(k + 1) for k in range(top + 1)]

    def pos(level: int, d: int) -> int:
        # point first, free orbit last
        return level - orders.index(d)

    res, tr, mult, unit = {}, {}, {}, {}
    for k in range(top + 1):
        h = orders[k]
        basis = [BurnsideElement.orbit(CyclicGroup(h), orders[k - i]) for i in range(k + 1)]
        if k:
            r = zeros(k, k + 1)
            t = zeros(k + 1, k)
            for j, b in enumerate(basis):
                for d, c in b.restrict(orders[k - 1]).coefficients:
                    r[pos(k - 1, d), j] = c
            for j in range(k):
                small = BurnsideElement.orbit(CyclicGroup(orders[k - 1]), orders[k - 1 - j])
                for d, c in small.induce(h).coefficients:
                    t[pos(k, d), j] = c
            res[k], tr[k] = r, t
        m = [[[0] * (k + 1) for _ in range(k + 1)] for _ in range(k + 1)]
        for i, bi in enumerate(basis):
            for j, bj in enumerate(basis):
                for d, c in (bi * bj).coefficients:
                    m[pos(k, d)][i][j] = c
        mult[k] = m
        unit[k] = [1] + [0] * k
    weyl = {k: None for k in range(top + 1)}
    mk = MackeyFunctor(group, levels, res, tr, weyl, check=False)
    return GreenFunctor(mk, mult, unit, check=False, name=f"A[{group}]")
