from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from liftings.core import terms_of_degree
from liftings.parse import ParseError, parse_hilbert_poly, parse_ideal, parse_monomial_ideal, parse_polys, parse_poly


def test_parse_running_example():
    ring, gens = parse_polys("x0^2, x0*x1 + x1^2, x0*x2")
    assert ring.nvars == 3 and len(gens) == 3
    assert str(gens[1]) == "x0*x1 + x1^2"


def test_empty_is_zero_ideal():
    assert parse_ideal("", nvars=3) == []


def test_errors():
    with pytest.raises(ParseError, match="homogeneous"):
        parse_ideal("x0 + 1")
    with pytest.raises(ParseError):
        parse_ideal("x0 + + ")
    with pytest.raises(ParseError):
        parse_ideal("x0*y1")
    with pytest.raises(ParseError):
        parse_ideal("x5", nvars=3)


def test_implicit_product_and_rationals():
    ring, (f,) = parse_polys("3/2 x0 x1^2 - x2^3", nvars=3)
    assert f == parse_poly("3/2*x0*x1^2 - x2^3", ring)


def test_hilbert_polynomial():
    p = parse_hilbert_poly("t^2+4*t+1")
    assert [p(t) for t in range(3)] == [1, 6, 13]
    with pytest.raises(ParseError):
        parse_hilbert_poly("t/3")


def test_monomial_ideal():
    J = parse_monomial_ideal("x0, x0^2, x1^2", nvars=3)
    assert str(J) == "(x1^2, x0)" or set(J.gens) == {(1, 0, 0), (0, 2, 0)}
    with pytest.raises(ParseError):
        parse_monomial_ideal("x0 + x1")


coef = st.integers(-9, 9).filter(bool)
term = st.sampled_from(terms_of_degree(3, 3))


@given(st.lists(st.tuples(coef, term), min_size=1, max_size=4))
def test_print_parse_roundtrip(items):
    text = " + ".join(f"{c}*x0^{a}*x1^{b}*x2^{d}" for c, (a, b, d) in items)
    ring, gens = parse_polys(text, nvars=3)
    if not gens:
        return
    ring2, again = parse_polys(", ".join(str(g) for g in gens), nvars=3)
    assert again == gens
