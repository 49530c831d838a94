import numpy as np
import pytest

from greenhh import CyclicGroup, burnside_mackey
from greenhh.abelian import FGAbelianGroup, GroupHom
from greenhh.cyclotomic import (
    _right_inverse,
    algebraic_restriction,
    classify_tower,
    ef_quotient,
    geometric_fixed_points,
    tr_tower,
)
from greenhh.green import ring_Z, ring_Zmod
from greenhh.mackey import MackeyError, MackeyFunctor, MackeyMorphism, zero_mackey


def phi_burnside_iso(p, n):
    """Phi(A^{C_{p^n}}) -> A^{C_{p^{n-1}}} induced by dropping the free orbit."""
    A = burnside_mackey(CyclicGroup(p ** n))
    q, proj = ef_quotient(A)
    P = geometric_fixed_points(A)
    B = burnside_mackey(CyclicGroup(p ** (n - 1)))
    maps = {}
    for k in range(1, n + 1):
        drop = np.eye(k, k + 1, dtype=object)
        maps[k - 1] = drop @ _right_inverse(proj.maps[k])
    return MackeyMorphism(P, B, maps, check=True)


@pytest.mark.parametrize("p, n", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (5, 2)])
def test_phi_of_burnside(p, n):
    f = phi_burnside_iso(p, n)
    assert f.is_iso()
    assert f.source.ranks() == [(k + 1, ()) for k in range(n)]


def test_phi_of_burnside_cp_is_Z():
    P = geometric_fixed_points(burnside_mackey(CyclicGroup(3)))
    assert P.group.order == 1 and P.levels[0].invariants == (1, ())


def test_phi_of_zero():
    assert geometric_fixed_points(zero_mackey(CyclicGroup(9))).is_zero()


def test_phi_needs_nontrivial_group():
    with pytest.raises(MackeyError):
        geometric_fixed_points(burnside_mackey(CyclicGroup(1)))


@pytest.mark.parametrize("p, n", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)])
def test_restriction_Z_degree0_is_quotient(p, n):
    r = algebraic_restriction(ring_Z(), p, n, 0)
    assert r.chain_map_ok
    assert r.source.invariants == (n + 1, ()) and r.target.invariants == (n, ())
    assert r.map.matrix.tolist() == np.eye(n, n + 1, dtype=int).tolist()


@pytest.mark.parametrize("degree", [1, 2])
def test_restriction_Z_higher_degrees_zero(degree):
    r = algebraic_restriction(ring_Z(), 2, 2, degree)
    assert r.chain_map_ok and r.source.is_zero() and r.target.is_zero()


@pytest.mark.parametrize("p", [2, 3])
def test_restriction_Fp_surjective(p):
    r = algebraic_restriction(ring_Zmod(p), p, 1, 0)
    assert r.chain_map_ok and r.map.is_surjective()


@pytest.mark.parametrize("p", [2, 3])
def test_tr_Z_degree0(p):
    T = tr_tower(ring_Z(), p, 3, 0)
    assert [g.invariants for g in T.stage_groups] == [(n + 1, ()) for n in range(4)]
    for n, f in T.transition_maps.items():
        assert f.rank() == n and f.is_surjective()
    assert T.classification == "Z^infinity"


@pytest.mark.parametrize("degree", [1, 2])
def test_tr_Z_higher(degree):
    T = tr_tower(ring_Z(), 3, 3, degree)
    assert all(g.is_zero() for g in T.stage_groups)
    assert T.classification == "0"


@pytest.mark.parametrize("p", [2, 3])
def test_tr_Fp(p):
    T = tr_tower(ring_Zmod(p), p, 2, 0)
    for g in T.stage_groups:
        r, t = g.invariants
        assert r == 0 and len(t) == 1
    assert all(f.is_surjective() for f in T.transition_maps.values())
    assert T.classification == "pro-p cyclic (consistent with Z_p)"
    # regression data from the first verified run
    assert [g.invariants for g in T.stage_groups] == [(0, (p ** (n + 1),)) for n in range(3)]


def test_classify_synthetic():
    Z, z = FGAbelianGroup.free(1), FGAbelianGroup.zero()
    assert classify_tower([Z, z], {1: GroupHom(z, Z, np.zeros((1, 0), dtype=object))}, 2) == "eventually zero"
    Z2 = FGAbelianGroup.free(2)
    assert classify_tower([Z, Z2], {1: GroupHom(Z2, Z, [[0, 0]])}, 2) == "unclassified"


def test_tr_json_shape():
    d = tr_tower(ring_Z(), 2, 2, 0).to_json()
    assert d["stages"] == [[1, []], [2, []], [3, []]]
    assert d["transitions"]["2"] == [[1, 0, 0], [0, 1, 0]]
