"""Shared fixtures: a corpus of Mackey functors over C_2, C_4, C_3 and C_9."""

from __future__ import annotations

import functools
import sys

import pytest

from greenhh import CyclicGroup, burnside_mackey
from greenhh.abelian import FGAbelianGroup
from greenhh.box import box
from greenhh.cyclotomic import ef_quotient, geometric_fixed_points
from greenhh.burnside import burnside_green
from greenhh.green import green_from_ring, ring_truncated_poly, ring_Z, ring_Zmod
from greenhh.hochschild import hh_relative
from greenhh.mackey import MackeyFunctor, mackey_direct_sum
from greenhh.norm import norm_ring

ORDERS = (2, 4, 3, 9)


def _height(order):
    return CyclicGroup(order).prime_power


def fixed_point_Z(order):
    """Z with trivial action: res = id, tr = p."""
    p, n = _height(order)
    L = [FGAbelianGroup.free(1)] * (n + 1)
    return MackeyFunctor(CyclicGroup(order), L, {k: [[1]] for k in range(1, n + 1)},
                         {k: [[p]] for k in range(1, n + 1)}, name="fixZ")


def dual_constant_Z(order):
    p, n = _height(order)
    L = [FGAbelianGroup.free(1)] * (n + 1)
    return MackeyFunctor(CyclicGroup(order), L, {k: [[p]] for k in range(1, n + 1)},
                         {k: [[1]] for k in range(1, n + 1)}, name="dualZ")


def constant_torsion(order):
    """Z/p at every level with tr = 0 (allowed because res tr = p = 0)."""
    p, n = _height(order)
    L = [FGAbelianGroup.cyclic(p)] * (n + 1)
    return MackeyFunctor(CyclicGroup(order), L, {k: [[1]] for k in range(1, n + 1)},
                         {k: [[0]] for k in range(1, n + 1)}, name="constFp")


def induced_C2():
    """Z[C_2] at the bottom with the swap action, Z on top."""
    g = CyclicGroup(2)
    return MackeyFunctor(g, [FGAbelianGroup.free(2), FGAbelianGroup.free(1)],
                         {1: [[1], [1]]}, {1: [[1, 1]]}, {0: [[0, 1], [1, 0]]}, name="indZ")


@functools.lru_cache(maxsize=None)
def corpus() -> tuple[tuple[str, MackeyFunctor], ...]:
    out = []
    for q in ORDERS:
        g = CyclicGroup(q)
        p, _ = g.prime_power
        A = burnside_mackey(g)
        out += [
            (f"A[C{q}]", A),
            (f"fixZ[C{q}]", fixed_point_Z(q)),
            (f"dualZ[C{q}]", dual_constant_Z(q)),
            (f"constFp[C{q}]", constant_torsion(q)),
            (f"N(F{p})[C{q}]", norm_ring(ring_Zmod(p), g).mackey),
            (f"A/EF[C{q}]", ef_quotient(A)[0]),
        ]
        if q in (4, 9):
            out.append((f"Phi(A)[C{q}]", geometric_fixed_points(A)))
    g2 = CyclicGroup(2)
    out += [
        ("indZ[C2]", induced_C2()),
        ("N(Z/4)[C2]", norm_ring(ring_Zmod(4), g2).mackey),
        ("N(Z/6)[C3]", norm_ring(ring_Zmod(6), CyclicGroup(3)).mackey),
        ("A+N(F2)[C2]", mackey_direct_sum([burnside_mackey(g2), norm_ring(ring_Zmod(2), g2).mackey])[0]),
        ("fixZ.box.indZ[C2]", box(fixed_point_Z(2), induced_C2()).mackey),
        ("HH0(F2)[C2]", hh_relative(ring_Zmod(2), g2, 0)[0]),
    ]
    return tuple(out)


@functools.lru_cache(maxsize=None)
def green_corpus():
    out = [(f"A[C{q}]", burnside_green(CyclicGroup(q))) for q in (2, 4, 3, 9)]
    out += [
        ("N(F2)[C2]", norm_ring(ring_Zmod(2), CyclicGroup(2)).green),
        ("N(F2)[C4]", norm_ring(ring_Zmod(2), CyclicGroup(4)).green),
        ("N(F3)[C3]", norm_ring(ring_Zmod(3), CyclicGroup(3)).green),
        ("N(F3)[C9]", norm_ring(ring_Zmod(3), CyclicGroup(9)).green),
        ("N(Z/4)[C2]", norm_ring(ring_Zmod(4), CyclicGroup(2)).green),
        ("Z", green_from_ring(ring_Z())),
        ("Z/6", green_from_ring(ring_Zmod(6))),
        ("F2[x]/x^2", green_from_ring(ring_truncated_poly(2, 2))),
        ("F3[x]/x^3", green_from_ring(ring_truncated_poly(3, 3))),
    ]
    return out


def corpus_over(order):
    return [(n, m) for n, m in corpus() if m.group.order == order]


def pytest_generate_tests(metafunc):
    if "corpus_item" in metafunc.fixturenames:
        items = corpus()
        metafunc.parametrize("corpus_item", items, ids=[n for n, _ in items])


@pytest.fixture
def A2():
    return burnside_mackey(CyclicGroup(2))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
