from itertools import product
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from greenhh.burnside import (
    BurnsideElement,
    CyclicGroup,
    Orbit,
    SpanClass,
    burnside_mackey,
    compose,
    hom_basis,
    identity_span,
    transfer_span,
)
from greenhh.mackey import evaluate_span


def _lcm(a, b):
    return a * b // gcd(a, b)


def brute_span_classes(n, h, k):
    """Isomorphism classes of spans G/H <- G/L -> G/K by enumerating leg images."""
    seen, classes = set(), 0
    for l in CyclicGroup(n).subgroups:
        if h % l or k % l:
            continue
        for a, b in product(range(n // h), range(n // k)):
            if (l, a, b) in seen:
                continue
            classes += 1
            for t in range(n):
                seen.add((l, (a + t) % (n // h), (b + t) % (n // k)))
    return classes


def brute_compose(f: SpanClass, g: SpanClass):
    """Pullback of finite G-sets, decomposed into orbits."""
    n = f.n
    u1, u2, t = n // f.middle, n // g.middle, n // f.target
    pts = [(x, y) for x in range(u1) for y in range(u2) if (f.label + x) % t == y % t]
    done, out = set(), {}
    for x, y in pts:
        if (x, y) in done:
            continue
        for s in range(n):
            done.add(((x + s) % u1, (y + s) % u2))
        stab = n // _lcm(u1, u2)
        a = x % (n // f.source)
        b = (g.label + y) % (n // g.target)
        sc = SpanClass.from_labels(n, f.source, stab, g.target, a, b)
        out[sc] = out.get(sc, 0) + 1
    return out


def test_hom_basis_cp_top():
    g = CyclicGroup(3)
    b = hom_basis(Orbit(g, 3), Orbit(g, 3))
    assert len(b) == 2
    assert {s.middle for s in b} == {1, 3}


def test_hom_basis_trivial_group():
    g = CyclicGroup(1)
    assert len(hom_basis(Orbit(g, 1), Orbit(g, 1))) == 1


@pytest.mark.parametrize("n", [2, 3, 4, 8, 9])
def test_hom_basis_counts_vs_enumeration(n):
    subs = CyclicGroup(n).subgroups
    for h in subs:
        for k in subs:
            basis = hom_basis(Orbit(CyclicGroup(n), h), Orbit(CyclicGroup(n), k))
            assert len(set(basis)) == len(basis) == brute_span_classes(n, h, k)


def _spans(n):
    g = CyclicGroup(n)
    return [s for h in g.subgroups for k in g.subgroups for s in hom_basis(Orbit(g, h), Orbit(g, k))]


@pytest.mark.parametrize("n", [4, 8, 9])
def test_composition_vs_pullback(n):
    spans = _spans(n)
    for f in spans:
        for g in spans:
            if f.target == g.source:
                assert compose(f, g) == brute_compose(f, g)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([4, 8, 9]), st.data())
def test_composition_associative(n, data):
    spans = _spans(n)
    f = data.draw(st.sampled_from(spans))
    g = data.draw(st.sampled_from([s for s in spans if s.source == f.target]))
    h = data.draw(st.sampled_from([s for s in spans if s.source == g.target]))

    def lin(x, y):
        out = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for c, cc in compose(a, b).items():
                    out[c] = out.get(c, 0) + ca * cb * cc
        return out

    assert lin(lin({f: 1}, {g: 1}), {h: 1}) == lin({f: 1}, lin({g: 1}, {h: 1}))


def test_identity_span_is_unit():
    for s in _spans(8):
        assert compose(identity_span(Orbit(CyclicGroup(8), s.source)), s) == {s: 1}
        assert compose(s, identity_span(Orbit(CyclicGroup(8), s.target))) == {s: 1}


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([4, 8, 9, 27]), st.data())
def test_burnside_ring_marks_multiplicative(n, data):
    g = CyclicGroup(n)
    coeffs = st.dictionaries(st.sampled_from(g.subgroups), st.integers(-5, 5))
    x = BurnsideElement.from_dict(g, data.draw(coeffs))
    y = BurnsideElement.from_dict(g, data.draw(coeffs))
    mx, my, mxy = x.marks(), y.marks(), (x * y).marks()
    assert all(mxy[e] == mx[e] * my[e] for e in g.subgroups)


def test_burnside_mackey_cp():
    for p in (2, 3, 5):
        A = burnside_mackey(CyclicGroup(p))
        assert [lv.invariants for lv in A.levels] == [(1, ()), (2, ())]
        assert A.tr[1].matrix.tolist() == [[0], [1]]
        assert A.res[1].matrix.tolist() == [[1, p]]
        assert all(w.equals(type(w).identity(w.source)) for w in A.weyl.values())


def test_transfer_span_evaluates_to_transfer():
    p = 3
    A = burnside_mackey(CyclicGroup(p))
    f = evaluate_span(A, transfer_span(p, 1, p))
    assert f.matrix.tolist() == [[0], [1]]
    assert evaluate_span(A, identity_span(Orbit(CyclicGroup(p), p))).matrix.tolist() == [[1, 0], [0, 1]]


@pytest.mark.parametrize("p, n", [(2, 1), (2, 3), (3, 2), (5, 1)])
def test_burnside_levels_rank(p, n):
    A = burnside_mackey(CyclicGroup(p ** n))
    assert [lv.invariants for lv in A.levels] == [(k + 1, ()) for k in range(n + 1)]
