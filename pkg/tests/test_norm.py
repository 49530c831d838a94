import numpy as np
import pytest

from greenhh import CyclicGroup, burnside_mackey
from greenhh.burnside import BurnsideElement, burnside_ring_mult
from greenhh.green import ring_truncated_poly, ring_Z, ring_Zmod
from greenhh.mackey import check_axioms
from greenhh.norm import NormError, norm_of_integer, norm_ring


def test_norm_Z_over_Cp_anchor():
    for p in (2, 3, 5):
        N = norm_ring(ring_Z(), CyclicGroup(p)).mackey
        assert [lv.invariants for lv in N.levels] == [(1, ()), (2, ())]
        assert N.tr[1].matrix.tolist() == [[0], [1]]
        assert (N.res[1].matrix @ np.array([[0], [1]], dtype=object)).tolist() == [[p]]


def _element(p, k, v):
    return BurnsideElement.from_dict(CyclicGroup(p ** k), {p ** (k - i): int(v[i]) for i in range(k + 1)})


@pytest.mark.parametrize("p, n", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (5, 2)])
def test_norm_Z_is_burnside_green(p, n):
    R = norm_ring(ring_Z(), CyclicGroup(p ** n)).green
    assert [lv.invariants for lv in R.mackey.levels] == [(k + 1, ()) for k in range(n + 1)]
    assert R.unit_morphism().is_iso()
    # multiplication agrees with products of finite G-sets
    for k in range(n + 1):
        basis = np.eye(k + 1, dtype=object)
        for i in range(k + 1):
            for j in range(k + 1):
                got = R.product(k, basis[:, i], basis[:, j])[:, 0].tolist()
                want = burnside_ring_mult(_element(p, k, basis[:, i]), _element(p, k, basis[:, j])).as_dict()
                assert got == [want.get(p ** (k - t), 0) for t in range(k + 1)]


@pytest.mark.parametrize("p", [2, 3])
def test_norm_of_integer_marks(p):
    # marks of N(v) at the subgroups below the top are the p-th powers of v's marks
    for v in range(-3, 4):
        w = norm_of_integer(p, 1, [v])
        m = _element(p, 1, w[:, 0]).marks()
        assert m[1] == v ** p and m[p] == v


@pytest.mark.parametrize("p, n", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_norm_Fp(p, n):
    R = norm_ring(ring_Zmod(p), CyclicGroup(p ** n)).green
    assert not R.failures()
    assert check_axioms(R.mackey).ok
    bottom = R.mackey.levels[0]
    assert bottom.invariants == (0, (p,))
    assert R.mackey.weyl[0].equals(type(R.mackey.weyl[0]).identity(bottom))
    assert R.unit_morphism().cokernel()[0].is_zero()
    # regression values from the first verified run: level k is Z/p^{k+1}
    assert [lv.invariants for lv in R.mackey.levels] == [(0, (p ** (k + 1),)) for k in range(n + 1)]


def test_norm_trivial_group_is_identity():
    R = norm_ring(ring_Zmod(6), CyclicGroup(1)).mackey
    assert R.levels[0].invariants == (0, (6,))


def test_norm_rejects_non_cyclic_ring():
    with pytest.raises(NormError):
        norm_ring(ring_truncated_poly(2, 2), CyclicGroup(2))


def test_norm_rejects_non_p_group():
    with pytest.raises(NormError):
        norm_ring(ring_Z(), CyclicGroup(6))
