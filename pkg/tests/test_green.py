import numpy as np
import pytest

from greenhh import CyclicGroup
from greenhh.burnside import burnside_green
from greenhh.green import (
    RingPresentation,
    TwistTag,
    green_from_ring,
    ring_truncated_poly,
    ring_Z,
    ring_Zmod,
    twist,
    weyl_action_morphism,
)
from greenhh.abelian import FGAbelianGroup
from greenhh.mackey import MackeyMorphism
from greenhh.norm import norm_ring


def test_ring_Z_and_Fp_green():
    for r in (ring_Z(), ring_Zmod(3)):
        G = green_from_ring(r)
        assert not G.failures()
        assert G.is_commutative()
    assert green_from_ring(ring_Z()).mackey.levels[0].invariants == (1, ())


def test_nonassociative_table_rejected():
    # unit e0; e1 e1 = e2, e2 e1 = e1, e1 e2 = 0: (e1 e1) e1 = e1 but e1 (e1 e1) = 0
    n = 3
    mult = [[[0] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        mult[i][0][i] = mult[i][i][0] = 1
    mult[2][1][1] = 1
    mult[1][2][1] = 1
    with pytest.raises(ValueError, match="associative"):
        RingPresentation(FGAbelianGroup.free(n), mult, [1, 0, 0])


@pytest.mark.parametrize("q", [2, 4, 3, 9])
def test_burnside_green_unit_and_mult(q):
    R = burnside_green(CyclicGroup(q))
    assert not R.failures()
    assert R.unit_morphism().is_iso()
    B, mu = R.mult_morphism()
    assert not mu.commutation_failures()
    assert B.mackey.ranks() == R.mackey.ranks()


@pytest.mark.parametrize("q", [2, 3, 9])
def test_weyl_action_trivial_on_burnside(q):
    A = burnside_green(CyclicGroup(q)).mackey
    assert weyl_action_morphism(A).equals(MackeyMorphism.identity(A))


def test_weyl_action_nontrivial_on_norm():
    N = norm_ring(ring_Zmod(0), CyclicGroup(4)).green.mackey
    assert not weyl_action_morphism(N).commutation_failures()


def test_twist_identity_and_order_two():
    R = norm_ring(ring_Zmod(2), CyclicGroup(2)).green
    M = R.as_module()
    assert twist(M, TwistTag(0, 2)) is M
    M2 = twist(twist(M, TwistTag.generator(2)), TwistTag.generator(2))
    assert M2.twist_exponent == 0
    for k in M.left:
        assert M.mackey.levels[k].contains_all(M2.left[k] - M.left[k])


def test_twist_tag_reduced():
    assert TwistTag(5, 4).exponent == 1
    assert TwistTag(-1, 9).exponent == 8


def test_truncated_poly_ring():
    r = ring_truncated_poly(2, 2)
    assert r.is_commutative() and r.characteristic() == 2
    assert RingPresentation.from_json(r.to_json()).to_json() == r.to_json()
