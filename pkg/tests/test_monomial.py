from __future__ import annotations


from hypothesis import given, settings
from hypothesis import strategies as st

from liftings.core import PolyRing, min_var, terms_of_degree
from liftings.monomial import HilbertPoly, MonomialIdeal, minimalize, pommaret_cone_contains, sous_escalier

from conftest import mono


def brute_quasi_stable(J, bound=12):
    """The defining condition, checked with powers up to a bound."""
    for g in J.gens:
        if not any(g):
            continue
        i = min_var(g)
        for j in range(i):
            base = list(g)
            base[i] -= 1
            if not any(tuple(base[:j] + [base[j] + k] + base[j + 1:]) in J for k in range(1, bound)):
                return False
    return True


def brute_hf(J, t):
    return sum(1 for u in terms_of_degree(J.nvars, t) if u not in J)


def test_minimalize():
    R = PolyRing(3)
    assert set(minimalize(R, [(1, 0, 0), (2, 0, 0), (0, 2, 0)]).gens) == {(1, 0, 0), (0, 2, 0)}
    Jp = mono("x0*x2, x0*x1, x0^2, x1^2*x2, x1^3", 4)
    assert len(Jp.gens) == 5
    assert MonomialIdeal(R, []).sous_escalier(2) == sorted(terms_of_degree(3, 2), reverse=True) or len(MonomialIdeal(R, []).sous_escalier(2)) == 6


def test_sous_escalier():
    J = mono("x0, x1^2", 3)
    assert set(sous_escalier(J, 2)) == {(0, 1, 1), (0, 0, 2)}
    assert len(MonomialIdeal(PolyRing(4), []).sous_escalier(1)) == 4
    Jp = mono("x0^2, x0*x1, x0*x2, x1^2*x2, x1^3", 4)
    assert len(Jp.sous_escalier(2)) == 7


def test_quasi_stability():
    assert mono("x0^2, x0*x1, x0*x2, x1^2*x2, x1^3", 4).is_quasi_stable()
    J = mono("x0^2, x1*x0, x2^2*x0, x2^4", 3)
    assert not J.is_quasi_stable() and not brute_quasi_stable(J)
    assert mono("x0", 2).is_quasi_stable()


def test_pommaret_basis():
    assert set(mono("x0, x1^2", 3).pommaret_basis()) == {(1, 0, 0), (0, 2, 0)}
    assert set(mono("x0, x1^3, x1^2*x2", 3).pommaret_basis()) == {(1, 0, 0), (0, 3, 0), (0, 2, 1)}
    assert MonomialIdeal(PolyRing(3), []).pommaret_basis() == ()


def test_hilbert_running_example():
    Jp = mono("x0^2, x0*x1, x0*x2, x1^2*x2, x1^3", 4)
    assert [Jp.hilbert_function(t) for t in range(6)] == [1, 4, 7, 9, 11, 13]
    assert Jp.hilbert_polynomial() == HilbertPoly([3, 2])
    assert Jp.extend(PolyRing(5)).hilbert_polynomial() == HilbertPoly([0, 4, 1])
    Z = MonomialIdeal(PolyRing(3), [])
    assert Z.hilbert_polynomial() == HilbertPoly.binomial(2, 2)
    dp = mono("x0, x1^2", 3)
    assert all(dp.hilbert_function(t) == 2 for t in range(1, 8))


def test_saturation_and_satiety():
    J1 = mono("x0, x1^3, x1^2*x2", 3)
    assert J1.saturate() == mono("x0, x1^2", 3)
    assert J1.satiety() == 3
    dp = mono("x0, x1^2", 3)
    assert dp.saturate() == dp and dp.satiety() == 0
    # section of J^(1) saturates to in(I')
    J1 = mono("x2*x0, x1*x0, x3*x0^2, x2*x1^2, x1^3, x0^3", 4)
    assert J1.saturate() == mono("x0^2, x0*x1, x0*x2, x1^2*x2, x1^3", 4)


def test_truncate_and_section():
    J = mono("x0, x1^2", 4)
    assert J.truncate(2) == mono("x0^2, x0*x1, x0*x2, x0*x3, x1^2", 4)
    assert J.truncate(0) == J
    J1 = mono("x2*x0, x1*x0, x3*x0^2, x2*x1^2, x1^3, x0^3", 5)
    S = J1.section()
    assert S.nvars == 4 and sorted(S.gens) == sorted(g[:4] for g in J1.gens)
    J2 = mono("x2*x0, x0^2, x3*x1*x0, x2*x1^2, x1^3, x1^2*x0", 5)
    assert J2.section().satiety() == 3


monos = st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)).filter(any), min_size=1, max_size=5)


@settings(max_examples=60, deadline=None)
@given(monos)
def test_properties_against_brute_force(gens):
    J = MonomialIdeal(PolyRing(3), gens)
    assert J.is_quasi_stable() == brute_quasi_stable(J)
    for t in range(7):
        assert J.hilbert_function(t) == brute_hf(J, t)
    top = max(J.hilbert_regularity(), 0) + 1
    assert J.hilbert_polynomial()(top) == brute_hf(J, top)
    S = J.saturate()
    assert S.is_saturated()
    if J.is_quasi_stable():
        P = J.pommaret_basis()
        # cones are disjoint and cover J in low degrees
        for d in range(1, J.max_degree() + 3):
            for u in terms_of_degree(3, d):
                owners = [p for p in P if pommaret_cone_contains(p, u)]
                assert len(owners) == (1 if u in J else 0)
