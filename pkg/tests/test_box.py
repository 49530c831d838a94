import numpy as np
import pytest

from conftest import corpus, corpus_over
from greenhh import CyclicGroup, burnside_mackey
from greenhh.abelian import FGAbelianGroup, identity
from greenhh.box import associator, box, box_inductive_levels, relative_box, symmetry_iso, unit_iso
from greenhh.burnside import burnside_green
from greenhh.green import GreenModule, green_from_ring, ring_Zmod
from greenhh.mackey import MackeyFunctor
from greenhh.norm import norm_ring


def _pairs(order):
    items = corpus_over(order)
    return [(f"{a}|{b}", x, y) for a, x in items for b, y in items]


ALL_PAIRS = [t for q in (2, 4, 3, 9) for t in _pairs(q)]


def test_unit_iso_on_corpus(corpus_item):
    name, m = corpus_item
    B, phi = unit_iso(m)
    assert not phi.commutation_failures()
    assert B.mackey.ranks() == m.ranks()
    assert phi.is_iso(), name


@pytest.mark.parametrize("p", [2, 3, 5])
def test_burnside_box_square(p):
    A = burnside_mackey(CyclicGroup(p))
    B = box(A, A).mackey
    assert [lv.invariants for lv in B.levels] == [(1, ()), (2, ())]


@pytest.mark.parametrize("name, m, n", ALL_PAIRS, ids=[t[0] for t in ALL_PAIRS])
def test_coend_vs_inductive(name, m, n):
    got = [lv.invariants for lv in box(m, n).mackey.levels]
    assert got == [g.invariants for g in box_inductive_levels(m, n)]


@pytest.mark.parametrize("name, m, n", ALL_PAIRS, ids=[t[0] for t in ALL_PAIRS])
def test_symmetry_iso(name, m, n):
    a, b, s = symmetry_iso(m, n)
    assert not s.commutation_failures()
    assert s.is_iso()
    _, _, s_back = symmetry_iso(n, m)
    assert (s_back @ s).equals(type(s).identity(a.mackey))


def _c2_triples():
    items = corpus_over(2)
    out = []
    for i, (a, x) in enumerate(items):
        b, y = items[(i + 1) % len(items)]
        c, z = items[(i + 3) % len(items)]
        out.append((f"{a}|{b}|{c}", x, y, z))
    return out


@pytest.mark.parametrize("name, x, y, z", _c2_triples(), ids=[t[0] for t in _c2_triples()])
def test_associator_c2(name, x, y, z):
    left, right, a = associator(x, y, z)
    assert not a.commutation_failures()
    assert a.is_iso()


def test_associator_c9_burnside_norm():
    g = CyclicGroup(9)
    N = norm_ring(ring_Zmod(3), g).mackey
    _, _, a = associator(N, burnside_mackey(g), N)
    assert a.is_iso()


def test_relative_box_over_unit_is_box():
    g = CyclicGroup(4)
    A = burnside_green(g)
    M = A.as_module()
    q, _, _ = relative_box(M, M)
    assert q.ranks() == box(A.mackey, A.mackey).mackey.ranks()


@pytest.mark.parametrize("order", [2, 3, 4])
def test_relative_box_self(order):
    R = norm_ring(ring_Zmod(2 if order % 2 == 0 else 3), CyclicGroup(order)).green
    q, _, _ = relative_box(R.as_module(), R.as_module())
    assert q.ranks() == R.mackey.ranks()


def _free_module(R, rank):
    g = FGAbelianGroup.cyclic(*([4] * rank))
    m = MackeyFunctor(CyclicGroup(1), [g], {}, {}, check=False)
    I = identity(rank)
    return GreenModule(R, m, {0: I}, {0: I})


@pytest.mark.parametrize("a, b", [(1, 1), (2, 1), (2, 3)])
def test_relative_box_free_modules_over_z4(a, b):
    R = green_from_ring(ring_Zmod(4))
    q, _, _ = relative_box(_free_module(R, a), _free_module(R, b))
    # R^a box_R R^b = R^{ab} by the classical tensor identity
    assert q.levels[0].invariants == (0, (4,) * (a * b))
