from collections import Counter
from itertools import product

import pytest

from conftest import corpus_over, green_corpus
from greenhh import CyclicGroup, burnside_mackey
from greenhh.abelian import FGAbelianGroup
from greenhh.box import box
from greenhh.burnside import burnside_green
from greenhh.green import green_from_ring, ring_truncated_poly, ring_Z
from greenhh.graded import (
    RHO,
    Generator,
    GradedGreen,
    GradedPresentation,
    ROC2Degree,
    SwitchSignTable,
    ZGradedMackey,
    bar_tor_ranks,
    check_graded_commutative,
    collapse_check,
    e2_presentation_mur,
    graded_box,
    graded_twisted_nerve,
    hh_eq_tor_check,
    hh_graded,
    hochschild_ranks_polynomial,
    koszul_tor,
    monomial_basis,
    rotating_iso_z,
)
from greenhh.hochschild import hh_twisted, normalized_complex
from greenhh.mackey import MackeyFunctor
from greenhh.norm import norm_ring
from greenhh.green import ring_Zmod


@pytest.mark.parametrize("a, b, s", [(0, 5, 1), (1, 1, -1), (2, 3, 1), (3, 5, -1)])
def test_rotating_sign(a, b, s):
    assert rotating_iso_z(a, b) == s


def test_roc2_degree():
    assert str(RHO) == "(1,1)"
    assert ROC2Degree.parse("(1,1)") == RHO
    assert (RHO * 3).rho_multiple == 3
    assert ROC2Degree(2, 1).rho_multiple is None
    assert RHO + ROC2Degree(0, 1) == ROC2Degree(1, 2)


def test_sign_tables():
    assert SwitchSignTable("z").failures(range(-2, 4)) == []
    assert SwitchSignTable("char2").sign(1, 1) == 1
    with pytest.raises(ValueError):
        SwitchSignTable("general")
    bad = SwitchSignTable("general", {(1, 1): 1, (1, 2): -1, (2, 1): 1, (2, 2): 1})
    assert bad.failures([1, 2])


# -- graded box --------------------------------------------------------------

def _graded(components, group):
    return ZGradedMackey(group, components)


def test_graded_box_unit():
    g = CyclicGroup(2)
    A = burnside_mackey(g)
    items = corpus_over(2)
    M = _graded({0: items[1][1], 2: items[3][1], 3: items[4][1]}, g)
    B = graded_box(_graded({0: A}, g), M, (0, 4))
    for d in range(5):
        assert B[d].ranks() == M[d].ranks()


def test_graded_box_concentrated():
    g = CyclicGroup(3)
    (_, x), (_, y) = corpus_over(3)[:2]
    B = graded_box(_graded({2: x}, g), _graded({3: y}, g), (0, 8))
    assert B.support == [5]
    assert B[5].ranks() == box(x, y).mackey.ranks()


def test_graded_box_vs_degreewise():
    g = CyclicGroup(2)
    items = [m for _, m in corpus_over(2)]
    M = _graded({0: items[0], 1: items[2]}, g)
    N = _graded({0: items[4], 2: items[5]}, g)
    B = graded_box(M, N, (0, 3))
    from greenhh.mackey import mackey_direct_sum

    for d in range(4):
        parts = [box(M[i], N[d - i]).mackey for i in (0, 1) if 0 <= d - i <= 2 and not M[i].is_zero() and not N[d - i].is_zero()]
        want = mackey_direct_sum(parts)[0].ranks() if parts else [(0, ())] * (g.prime_power[1] + 1)
        assert B[d].ranks() == want


# -- graded Green functors and the graded nerve ------------------------------

def exterior_Z():
    """Lambda_Z(x) with |x| = 1 over the trivial group."""
    Z = FGAbelianGroup.free(1)
    one = MackeyFunctor(CyclicGroup(1), [Z], {}, {}, name="Z")
    mult = {(0, 0): {0: [[1]]}, (0, 1): {0: [[1]]}, (1, 0): {0: [[1]]}}
    return GradedGreen({0: one, 1: one}, mult, {0: [[1]]}, name="Lambda(x)")


def poly_Z_deg2():
    """Z[y]/(y^3) with |y| = 2."""
    Z = FGAbelianGroup.free(1)
    one = MackeyFunctor(CyclicGroup(1), [Z], {}, {}, name="Z")
    mult = {(i, j): {0: [[1]]} for i in (0, 2, 4) for j in (0, 2, 4) if i + j <= 4}
    return GradedGreen({0: one, 2: one, 4: one}, mult, {0: [[1]]}, name="Z[y]/y^3")


def test_commutativity_checks():
    assert check_graded_commutative(poly_Z_deg2()).ok
    z_even = GradedPresentation("Z", 0, [Generator("y", "poly", 0, 2)], mode="Z")
    assert check_graded_commutative(z_even).ok
    z_odd = GradedPresentation("Z", 0, [Generator("x", "poly", 0, 1)], mode="Z")
    assert not check_graded_commutative(z_odd).ok
    assert check_graded_commutative(e2_presentation_mur(3, 6)).ok


@pytest.mark.parametrize("R", [exterior_Z(), poly_Z_deg2()], ids=["Lambda", "poly"])
@pytest.mark.parametrize("internal", [0, 1, 2, 3, 4])
def test_graded_nerve_identities(R, internal):
    s = graded_twisted_nerve(R, internal, 3)
    assert s.identity_failures() == []
    assert normalized_complex(s).dd_failures() == []


def test_exterior_hh_internal_degrees():
    hs = hh_graded(exterior_Z(), 2, internal=[0, 1, 2, 3])
    for q, h in enumerate(hs):
        assert set(h.support) <= {q, q + 1}
        assert q in h.support


def test_hh_graded_zero_algebra():
    z = FGAbelianGroup.zero()
    zero = MackeyFunctor(CyclicGroup(1), [z], {}, {})
    R = GradedGreen({0: zero}, {(0, 0): {0: [[]]}}, {0: [[]]})
    assert all(not h.support for h in hh_graded(R, 2))


@pytest.mark.parametrize("name, R", green_corpus(), ids=[n for n, _ in green_corpus()])
def test_hh_graded_degree0_equals_ungraded(name, R):
    graded = hh_graded(R, 2)
    plain = hh_twisted(R, 2)
    for g, h in zip(graded, plain):
        assert g[0].ranks() == h.ranks()


def test_hh_graded_burnside_anchor():
    R = burnside_green(CyclicGroup(3))
    hs = hh_graded(R, 3)
    assert hs[0][0].ranks() == R.mackey.ranks()
    assert all(h[0].is_zero() for h in hs[1:])


# -- Koszul Tor and the E2 presentation ---------------------------------------

def _base(k):
    return GradedPresentation("HF2*", 2, [Generator(f"b{i}", "poly", 0, RHO * i) for i in range(1, k + 1)])


def test_koszul_no_generators():
    t = koszul_tor(_base(0), 4)
    assert t.generators == []
    assert [(s, d) for _, s, d in monomial_basis(t, 4)] == [(0, ROC2Degree(0, 0))]


def test_koszul_one_generator():
    t = koszul_tor(_base(1), 2)
    assert [(g.name, g.kind, g.filtration, str(g.degree)) for g in t.generators] == [("z1", "ext", 1, "(1,1)")]


def _counts(pres, trunc):
    return dict(Counter((s, d.rho_multiple) for _, s, d in monomial_basis(pres, trunc)))


def test_koszul_vs_bar_oracle():
    assert _counts(koszul_tor(_base(3), 6), 6) == bar_tor_ranks([1, 2, 3], 6)


def test_e2_one_generator():
    e = e2_presentation_mur(1, 2)
    assert {g.name: (g.filtration, str(g.degree)) for g in e.generators} == {"b1": (0, "(1,1)"), "z1": (1, "(1,1)")}


def test_e2_no_generators():
    e = e2_presentation_mur(0, 4)
    assert e.generators == []


def test_e2_two_generators_vs_enumeration():
    e = e2_presentation_mur(2, 4)
    want = Counter()
    for e1, e2, f1, f2 in product(range(5), range(3), range(2), range(2)):
        w = e1 + 2 * e2 + f1 + 2 * f2
        if w <= 4:
            want[(f1 + f2, w)] += 1
    assert _counts(e, 4) == dict(want)


def test_e2_three_generators_vs_hochschild_oracle():
    e = e2_presentation_mur(3, 6)
    assert _counts(e, 6) == hochschild_ranks_polynomial([1, 2, 3], 6)


def test_collapse():
    assert collapse_check(e2_presentation_mur(3, 6)).collapses
    deep = GradedPresentation("HF2*", 2, [Generator("w", "ext", 2, RHO)])
    rep = collapse_check(deep)
    assert not rep.collapses and rep.offending == ["w"]
    assert collapse_check(GradedPresentation("HF2*", 2, [])).collapses


def test_presentation_json_roundtrip():
    e = e2_presentation_mur(2, 4)
    assert GradedPresentation.from_json(e.to_json()).to_json() == e.to_json()


def test_char2_mode_rejects_signs():
    with pytest.raises(ValueError):
        GradedPresentation("HF2*", 2, [], signs=SwitchSignTable("z"))


# -- HH = Tor ------------------------------------------------------------------

def test_hh_eq_tor_burnside():
    rep = hh_eq_tor_check(burnside_green(CyclicGroup(3)), 3)
    assert rep.ok, rep


def test_hh_eq_tor_m_equals_r_degree0():
    for R in (norm_ring(ring_Zmod(2), CyclicGroup(2)).green, burnside_green(CyclicGroup(2))):
        assert hh_eq_tor_check(R, 0).ok


def test_hh_eq_tor_dual_numbers():
    rep = hh_eq_tor_check(green_from_ring(ring_truncated_poly(2, 2)), 3)
    assert rep.ok, rep
